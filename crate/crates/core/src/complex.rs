//! Finite free chain complexes over `ℤG`, their homology, and cohomology
//! with local coefficients.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};
use crate::group::GroupData;
use crate::integer::{
    image_basis, kernel_basis, membership, preimage_basis, subquotient, AbelianGroup, IntMatrix,
    LatticeCoords, NonMembership,
};
use crate::module::{FPModule, LatticeModule};
use crate::ring::GroupRingMatrix;

/// `C_bottom ← C_{bottom+1} ← …`; `boundaries[i]` is `∂` out of degree
/// `bottom + i + 1`, a `ranks[i] × ranks[i+1]` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeChainComplex {
    group: Arc<GroupData>,
    bottom: i64,
    ranks: Vec<usize>,
    boundaries: Vec<GroupRingMatrix>,
}

/// Outcome of [`FreeChainComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Validation {
    Valid,
    DimensionMismatch {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// `∂_{degree−1}·∂_degree` has a nonzero column.
    NonzeroComposite {
        degree: i64,
        column: usize,
        image: Vec<String>,
    },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }
}

/// `H_j` as a module `Z_j / B_j` plus its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub degree: i64,
    pub module: FPModule,
    pub abelian: AbelianGroup,
    /// Basis of the cycle lattice in flattened coordinates; the module's
    /// ambient coordinates refer to these columns.
    pub cycle_basis: IntMatrix,
}

impl FreeChainComplex {
    /// Checks that the number of boundaries matches and that entries lie in the group;
    /// use [`validate`](Self::validate) for shapes and `∂∂ = 0`.
    pub fn new(
        group: Arc<GroupData>,
        bottom: i64,
        ranks: Vec<usize>,
        boundaries: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        if boundaries.len() != ranks.len().saturating_sub(1) {
            return Err(malformed(format!(
                "{} ranks need {} boundary matrices, found {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for b in &boundaries {
            b.check(&group)?;
        }
        Ok(FreeChainComplex {
            group,
            bottom,
            ranks,
            boundaries,
        })
    }

    /// Like [`new`](Self::new) but also requires [`validate`](Self::validate) to pass.
    pub fn new_valid(
        group: Arc<GroupData>,
        bottom: i64,
        ranks: Vec<usize>,
        boundaries: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        let c = Self::new(group, bottom, ranks, boundaries)?;
        match c.validate() {
            Validation::Valid => Ok(c),
            v => Err(Error::InvalidComplex(format!("{v:?}"))),
        }
    }

    pub fn empty(group: Arc<GroupData>) -> Self {
        FreeChainComplex {
            group,
            bottom: 0,
            ranks: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    /// One free generator in degree 0.
    pub fn point(group: Arc<GroupData>) -> Self {
        FreeChainComplex {
            group,
            bottom: 0,
            ranks: vec![1],
            boundaries: Vec::new(),
        }
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupData> {
        &self.group
    }

    pub fn bottom_degree(&self) -> i64 {
        self.bottom
    }

    /// Highest stored degree (`bottom − 1` for no degrees).
    pub fn top_degree(&self) -> i64 {
        self.bottom + self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary_list(&self) -> &[GroupRingMatrix] {
        &self.boundaries
    }

    pub fn rank(&self, d: i64) -> usize {
        if d < self.bottom || d > self.top_degree() {
            0
        } else {
            self.ranks[(d - self.bottom) as usize]
        }
    }

    /// `∂_d: C_d → C_{d−1}`, zero outside the stored range.
    pub fn boundary(&self, d: i64) -> GroupRingMatrix {
        if d > self.bottom && d <= self.top_degree() {
            self.boundaries[(d - self.bottom - 1) as usize].clone()
        } else {
            GroupRingMatrix::zeros(self.rank(d - 1), self.rank(d))
        }
    }

    pub fn flat_boundary(&self, d: i64) -> IntMatrix {
        self.boundary(d).flatten(&self.group)
    }

    /// The smallest and largest degree with nonzero rank, if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.ranks.iter().position(|&r| r > 0)?;
        let hi = self.ranks.iter().rposition(|&r| r > 0)?;
        Some((self.bottom + lo as i64, self.bottom + hi as i64))
    }

    /// Σ (−1)^d rank_d over `ℤG`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if (self.bottom + i as i64).rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn validate(&self) -> Validation {
        for (i, b) in self.boundaries.iter().enumerate() {
            let d = self.bottom + i as i64 + 1;
            let expected = (self.ranks[i], self.ranks[i + 1]);
            if b.shape() != expected {
                return Validation::DimensionMismatch {
                    degree: d,
                    expected,
                    found: b.shape(),
                };
            }
        }
        for i in 1..self.boundaries.len() {
            let d = self.bottom + i as i64 + 1;
            let prod = self.boundaries[i - 1].mul(&self.boundaries[i], &self.group);
            if let Some(column) = (0..prod.cols()).find(|&j| !prod.column(j).is_zero()) {
                let image = (0..prod.rows())
                    .map(|r| prod.get(r, column).display_with(&self.group))
                    .collect();
                return Validation::NonzeroComposite { degree: d, column, image };
            }
        }
        Validation::Valid
    }

    /// Basis of `Z_d = ker flatten(∂_d)` as columns in `ℤ^{rank_d·|G|}`.
    pub fn cycle_basis(&self, d: i64) -> IntMatrix {
        let flat = self.flat_boundary(d);
        if flat.rows() == 0 {
            return IntMatrix::identity(flat.cols());
        }
        kernel_basis(&flat)
    }

    /// Basis of `B_d = im flatten(∂_{d+1})`.
    pub fn boundary_basis(&self, d: i64) -> IntMatrix {
        image_basis(&self.flat_boundary(d + 1))
    }

    pub fn homology(&self, d: i64) -> Homology {
        let z = self.cycle_basis(d);
        let b = self.flat_boundary(d + 1);
        let ambient = LatticeModule::free(&self.group, self.rank(d))
            .restrict(&z)
            .expect("cycles are invariant");
        let coords = if z.cols() == 0 {
            IntMatrix::zeros(0, b.cols())
        } else {
            LatticeCoords::new(z.clone())
                .coords_matrix(&b)
                .expect("boundaries are cycles in a valid complex")
        };
        let module = FPModule::new(ambient, &coords).expect("boundaries are invariant");
        let abelian = module.abelian_group();
        Homology {
            degree: d,
            module,
            abelian,
            cycle_basis: z,
        }
    }

    /// Degreewise direct sum over the same group.
    pub fn direct_sum(&self, other: &FreeChainComplex) -> Result<FreeChainComplex> {
        if !self.group.same_structure(&other.group) {
            return Err(Error::GroupMismatch("direct sum of complexes over different groups".into()));
        }
        let lo = self.bottom.min(other.bottom);
        let hi = self.top_degree().max(other.top_degree());
        if hi < lo {
            return Ok(FreeChainComplex::empty(self.group.clone()));
        }
        let ranks = (lo..=hi).map(|d| self.rank(d) + other.rank(d)).collect();
        let boundaries = (lo + 1..=hi)
            .map(|d| GroupRingMatrix::block_diag(&[&self.boundary(d), &other.boundary(d)]))
            .collect();
        FreeChainComplex::new(self.group.clone(), lo, ranks, boundaries)
    }

    /// Same complex with all degrees moved up by `by`.
    pub fn shift(&self, by: i64) -> FreeChainComplex {
        let mut c = self.clone();
        c.bottom += by;
        c
    }

    /// Extends the stored degree range to include `[lo, hi]` with zero ranks.
    pub fn padded(&self, lo: i64, hi: i64) -> FreeChainComplex {
        let lo = lo.min(self.bottom);
        let hi = hi.max(self.top_degree());
        let ranks = (lo..=hi).map(|d| self.rank(d)).collect();
        let boundaries = (lo + 1..=hi).map(|d| self.boundary(d)).collect();
        FreeChainComplex {
            group: self.group.clone(),
            bottom: lo,
            ranks,
            boundaries,
        }
    }

    /// Drops zero-rank degrees at both ends.
    pub fn trimmed(&self) -> FreeChainComplex {
        match self.support() {
            None => FreeChainComplex::empty(self.group.clone()),
            Some((lo, hi)) => {
                let ranks = (lo..=hi).map(|d| self.rank(d)).collect();
                let boundaries = (lo + 1..=hi).map(|d| self.boundary(d)).collect();
                FreeChainComplex {
                    group: self.group.clone(),
                    bottom: lo,
                    ranks,
                    boundaries,
                }
            }
        }
    }

    /// Replaces the group by an isomorphic copy with the same table (e.g. a relabelled product).
    pub fn with_group(&self, group: Arc<GroupData>) -> Result<FreeChainComplex> {
        FreeChainComplex::new(group, self.bottom, self.ranks.clone(), self.boundaries.clone())
    }
}

/// `δ^j: L^{r_j} → L^{r_{j+1}}`, `α ↦ (−1)^j α∘∂_{j+1}`. Block `(r, i)` is
/// `(−1)^j ρ̃(∂_{j+1}[i][r])`.
pub fn coboundary(c: &FreeChainComplex, l: &LatticeModule, j: i64) -> IntMatrix {
    let d = c.boundary(j + 1);
    let m = l.rank();
    let mut out = IntMatrix::zeros(d.cols() * m, d.rows() * m);
    let sign = if j.rem_euclid(2) == 0 { BigInt::from(1) } else { BigInt::from(-1) };
    for r in 0..d.cols() {
        for i in 0..d.rows() {
            let a = d.get(i, r);
            if a.is_zero() {
                continue;
            }
            let block = l.right_action(a, c.group()).scale(&sign);
            for x in 0..m {
                for y in 0..m {
                    out[(r * m + x, i * m + y)] = block[(x, y)].clone();
                }
            }
        }
    }
    out
}

fn repeated_relations(r: &FPModule, copies: usize) -> IntMatrix {
    let blocks: Vec<&IntMatrix> = (0..copies).map(|_| &r.relations).collect();
    if blocks.is_empty() {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::block_diag(&blocks)
    }
}

fn check_coefficients(c: &FreeChainComplex, r: &FPModule) -> Result<()> {
    if !r.ambient.same_shape(c.group()) {
        return Err(Error::GroupMismatch(format!(
            "coefficient module has {} action matrices but the group has order {}",
            r.ambient.actions().len(),
            c.group().order()
        )));
    }
    Ok(())
}

/// `H^j(Hom_{ℤG}(C, L/N))`: cochains `x ∈ L^{r_j}` with `δx ∈ N^{r_{j+1}}`,
/// modulo `im δ^{j−1} + N^{r_j}`.
pub fn cohomology_local(c: &FreeChainComplex, r: &FPModule, j: i64) -> Result<AbelianGroup> {
    check_coefficients(c, r)?;
    let rj = c.rank(j);
    if rj == 0 || r.ambient.rank() == 0 {
        return Ok(AbelianGroup::zero());
    }
    let delta = coboundary(c, &r.ambient, j);
    let cocycles = preimage_basis(&delta, &repeated_relations(r, c.rank(j + 1)));
    let trivial = coboundary(c, &r.ambient, j - 1).hstack(&repeated_relations(r, rj));
    Ok(subquotient(&cocycles, &trivial))
}

/// Decides whether the cochain `x` is a coboundary modulo relations; on
/// failure the certificate is against `[δ^{j−1} | N^{r_j}]`.
pub fn coboundary_membership(
    c: &FreeChainComplex,
    r: &FPModule,
    j: i64,
    x: &[BigInt],
) -> Result<std::result::Result<Vec<BigInt>, NonMembership>> {
    check_coefficients(c, r)?;
    let m = coboundary_target(c, r, j);
    if m.rows() != x.len() {
        return Err(Error::Dimension("cochain has the wrong length".into()));
    }
    Ok(membership(&m, x))
}

/// `[δ^{j−1} | N^{r_j}]`, the matrix whose column span is the trivial classes in degree `j`.
pub fn coboundary_target(c: &FreeChainComplex, r: &FPModule, j: i64) -> IntMatrix {
    let rj = c.rank(j);
    let delta = coboundary(c, &r.ambient, j - 1);
    let rel = repeated_relations(r, rj);
    if rel.rows() == 0 {
        return IntMatrix::zeros(rj * r.ambient.rank(), delta.cols());
    }
    delta.hstack(&rel)
}

/// Basis-aligned subcomplex: the listed generator indices in each degree
/// (indexed from the bottom degree of the ambient complex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subcomplex {
    pub included: Vec<Vec<usize>>,
}

impl Subcomplex {
    pub fn everything(t: &FreeChainComplex) -> Self {
        Subcomplex {
            included: t.ranks().iter().map(|&r| (0..r).collect()).collect(),
        }
    }

    pub fn nothing(t: &FreeChainComplex) -> Self {
        Subcomplex {
            included: vec![Vec::new(); t.ranks().len()],
        }
    }

    fn indices(&self, t: &FreeChainComplex, d: i64) -> Vec<usize> {
        if d < t.bottom_degree() || d > t.top_degree() {
            return Vec::new();
        }
        self.included.get((d - t.bottom_degree()) as usize).cloned().unwrap_or_default()
    }

    fn complement(&self, t: &FreeChainComplex, d: i64) -> Vec<usize> {
        let inc = self.indices(t, d);
        (0..t.rank(d)).filter(|i| !inc.contains(i)).collect()
    }

    /// Checks indices and closure under the boundary.
    pub fn check(&self, t: &FreeChainComplex) -> Result<()> {
        if self.included.len() > t.ranks().len() {
            return Err(malformed("subcomplex lists more degrees than the complex has"));
        }
        for d in t.bottom_degree()..=t.top_degree() {
            let inc = self.indices(t, d);
            let mut sorted = inc.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != inc.len() || inc.iter().any(|&i| i >= t.rank(d)) {
                return Err(malformed(format!("bad generator list in degree {d}")));
            }
            let b = t.boundary(d);
            for &col in &inc {
                for row in self.complement(t, d - 1) {
                    if !b.get(row, col).is_zero() {
                        return Err(Error::InvalidComplex(format!(
                            "generator {col} in degree {d} has boundary outside the subcomplex (row {row})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn sub_complex(&self, t: &FreeChainComplex) -> Result<FreeChainComplex> {
        self.check(t)?;
        self.restricted(t, |d| self.indices(t, d))
    }

    pub fn quotient_complex(&self, t: &FreeChainComplex) -> Result<FreeChainComplex> {
        self.check(t)?;
        self.restricted(t, |d| self.complement(t, d))
    }

    fn restricted(&self, t: &FreeChainComplex, keep: impl Fn(i64) -> Vec<usize>) -> Result<FreeChainComplex> {
        let lo = t.bottom_degree();
        let hi = t.top_degree();
        let ranks = (lo..=hi).map(|d| keep(d).len()).collect();
        let boundaries = (lo + 1..=hi).map(|d| t.boundary(d).select(&keep(d - 1), &keep(d))).collect();
        FreeChainComplex::new(t.group_arc().clone(), lo, ranks, boundaries)
    }
}

/// Homology of `T/X`.
pub fn relative_homology(t: &FreeChainComplex, x: &Subcomplex, j: i64) -> Result<Homology> {
    Ok(x.quotient_complex(t)?.homology(j))
}
