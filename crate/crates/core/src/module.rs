//! Coefficient modules: `ℤ`-lattices with a `G`-action, and quotients of
//! them by invariant sublattices.
//!
//! Actions are stored as left actions `ρ(g)`. Since free modules are right
//! `ℤG`-modules here, a lattice is made a right module by `x·a = ρ̃(a)x`
//! with `ρ̃(a) = Σ a_g ρ(g⁻¹)`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};
use crate::group::GroupData;
use crate::integer::{image_basis, smith_normal_form, subquotient, AbelianGroup, IntMatrix, LatticeCoords};
use crate::ring::{GroupRingElement, GroupRingMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeModule {
    rank: usize,
    action: Vec<IntMatrix>,
}

impl LatticeModule {
    /// Checks that `action` is a homomorphism into `GL(rank, ℤ)`.
    pub fn new(group: &GroupData, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(malformed(format!("action needs {} matrices", group.order())));
        }
        if action.iter().any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(malformed(format!("action matrices must be {rank}x{rank}")));
        }
        if !action[0].is_identity() {
            return Err(malformed("identity does not act trivially"));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if action[a].mul(&action[b]) != action[group.mul(a, b)] {
                    return Err(malformed(format!("action is not multiplicative at ({a},{b})")));
                }
            }
        }
        Ok(LatticeModule { rank, action })
    }

    pub(crate) fn new_unchecked(rank: usize, action: Vec<IntMatrix>) -> Self {
        LatticeModule { rank, action }
    }

    pub fn zero(group: &GroupData) -> Self {
        Self::new_unchecked(0, vec![IntMatrix::zeros(0, 0); group.order()])
    }

    pub fn trivial(group: &GroupData) -> Self {
        Self::new_unchecked(1, vec![IntMatrix::identity(1); group.order()])
    }

    /// Rank-one module on which `g` acts by `chi[g]`.
    pub fn sign(group: &GroupData, chi: &[i8]) -> Result<Self> {
        let action = chi.iter().map(|&c| IntMatrix::from_rows(&[vec![c as i64]])).collect();
        Self::new(group, 1, action)
    }

    /// `ℤG` itself; `g` sends basis vector `hg` to `h` (right multiplication by `g⁻¹`),
    /// which commutes with every flattened `ℤG`-matrix.
    pub fn regular(group: &GroupData) -> Self {
        Self::free(group, 1)
    }

    /// `ℤG^n` in flattened coordinates.
    pub fn free(group: &GroupData, n: usize) -> Self {
        let size = group.order();
        let action = (0..size)
            .map(|g| {
                let mut m = IntMatrix::zeros(n * size, n * size);
                for b in 0..n {
                    for h in 0..size {
                        m[(b * size + h, b * size + group.mul(h, g))] = BigInt::one();
                    }
                }
                m
            })
            .collect();
        Self::new_unchecked(n * size, action)
    }

    /// `ℤ[G/H]` on left cosets.
    pub fn permutation(group: &GroupData, subgroup: &[usize]) -> Self {
        let cosets = group.left_cosets(subgroup);
        let which = |x: usize| cosets.iter().position(|c| c.binary_search(&x).is_ok()).unwrap();
        let n = cosets.len();
        let action = (0..group.order())
            .map(|g| {
                let mut m = IntMatrix::zeros(n, n);
                for (i, c) in cosets.iter().enumerate() {
                    m[(which(group.mul(g, c[0])), i)] = BigInt::one();
                }
                m
            })
            .collect();
        Self::new_unchecked(n, action)
    }

    /// Kernel of the augmentation, with basis `g − e` for `g ≠ e`.
    pub fn augmentation_ideal(group: &GroupData) -> Self {
        let n = group.order();
        let mut basis = IntMatrix::zeros(n, n - 1);
        for g in 1..n {
            basis[(g, g - 1)] = BigInt::one();
            basis[(0, g - 1)] = -BigInt::one();
        }
        Self::regular(group)
            .restrict(&basis)
            .expect("augmentation ideal is invariant")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// One square matrix of size `rank` per group element.
    pub fn has_shape(&self, group: &GroupData) -> bool {
        self.action.len() == group.order() && self.action.iter().all(|m| m.rows() == self.rank && m.cols() == self.rank)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_action(&self, a: &GroupRingElement, group: &GroupData) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rank, self.rank);
        for (g, c) in a.terms() {
            out = out.add(&self.action[group.inv(g)].scale(c));
        }
        out
    }

    pub fn direct_sum(&self, other: &LatticeModule) -> LatticeModule {
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| IntMatrix::block_diag(&[a, b]))
            .collect();
        Self::new_unchecked(self.rank + other.rank, action)
    }

    /// Change of basis `ρ'(g) = P·ρ(g)·P⁻¹`.
    pub fn conjugate(&self, p: &IntMatrix, p_inv: &IntMatrix) -> Result<LatticeModule> {
        if !p.mul(p_inv).is_identity() {
            return Err(malformed("conjugating matrix is not invertible over the integers"));
        }
        let action = self.action.iter().map(|a| p.mul(a).mul(p_inv)).collect();
        Ok(Self::new_unchecked(self.rank, action))
    }

    /// The action restricted to an invariant sublattice spanned by the
    /// (independent) columns of `basis`.
    pub fn restrict(&self, basis: &IntMatrix) -> Result<LatticeModule> {
        if basis.rows() != self.rank {
            return Err(Error::Dimension("sublattice basis has the wrong length".into()));
        }
        let coords = LatticeCoords::new(basis.clone());
        let action = self
            .action
            .iter()
            .map(|a| coords.coords_matrix(&a.mul(basis)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| malformed("sublattice is not invariant under the action"))?;
        Ok(Self::new_unchecked(basis.cols(), action))
    }

    pub fn same_shape(&self, group: &GroupData) -> bool {
        self.action.len() == group.order()
    }
}

/// `L / N` for a lattice module `L` and an invariant sublattice `N`
/// (stored by a basis of columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FPModule {
    pub ambient: LatticeModule,
    pub relations: IntMatrix,
}

impl FPModule {
    pub fn new(ambient: LatticeModule, relations: &IntMatrix) -> Result<Self> {
        if relations.rows() != ambient.rank() {
            return Err(Error::Dimension("relations have the wrong length".into()));
        }
        let relations = image_basis(relations);
        if relations.cols() > 0 {
            let coords = LatticeCoords::new(relations.clone());
            for a in ambient.actions() {
                if coords.coords_matrix(&a.mul(&relations)).is_none() {
                    return Err(malformed("relations are not invariant under the action"));
                }
            }
        }
        Ok(FPModule { ambient, relations })
    }

    pub fn from_lattice(l: LatticeModule) -> Self {
        let relations = IntMatrix::zeros(l.rank(), 0);
        FPModule { ambient: l, relations }
    }

    /// Cokernel of `P: ℤG^a → ℤG^b`.
    pub fn from_presentation(p: &GroupRingMatrix, group: &GroupData) -> Self {
        let ambient = LatticeModule::free(group, p.rows());
        FPModule::new(ambient, &p.flatten(group)).expect("image of a ZG-map is invariant")
    }

    pub fn abelian_group(&self) -> AbelianGroup {
        let id = IntMatrix::identity(self.ambient.rank());
        subquotient(&id, &self.relations)
    }

    pub fn is_zero(&self) -> bool {
        self.abelian_group().is_zero()
    }

    /// Matrices `T_g` with `ρ(g)·N = N·T_g`, letting a verifier check
    /// invariance of the relations by multiplication alone.
    pub fn relation_transport(&self) -> Vec<IntMatrix> {
        if self.relations.cols() == 0 {
            return vec![IntMatrix::zeros(0, 0); self.ambient.actions().len()];
        }
        let coords = LatticeCoords::new(self.relations.clone());
        self.ambient
            .actions()
            .iter()
            .map(|a| coords.coords_matrix(&a.mul(&self.relations)).expect("invariant relations"))
            .collect()
    }

    /// The quotient as a lattice module, when it is `ℤ`-torsion-free.
    pub fn to_lattice(&self) -> Option<LatticeModule> {
        let s = smith_normal_form(&self.relations);
        if !s.diagonal.iter().all(One::is_one) {
            return None;
        }
        let r = s.rank();
        let m = self.ambient.rank();
        let rows: Vec<usize> = (r..m).collect();
        let all: Vec<usize> = (0..m).collect();
        let q = s.u.select(&rows, &all);
        let section = s.u_inv.select(&all, &rows);
        let action = self.ambient.actions().iter().map(|a| q.mul(a).mul(&section)).collect();
        Some(LatticeModule::new_unchecked(m - r, action))
    }

    /// Rank of the ambient lattice (number of `ℤ`-generators).
    pub fn generator_count(&self) -> usize {
        self.ambient.rank()
    }

    pub fn direct_sum(&self, other: &FPModule) -> FPModule {
        let relations = IntMatrix::block_diag(&[&self.relations, &other.relations]);
        FPModule {
            ambient: self.ambient.direct_sum(&other.ambient),
            relations,
        }
    }

    pub fn zero_dimensional(&self) -> bool {
        self.ambient.rank() == 0
    }
}
