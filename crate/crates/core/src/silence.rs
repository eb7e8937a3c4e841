//! Deciding whether `H^k(C; R)` vanishes for every coefficient module `R`.
//!
//! This holds exactly when (b1) `∂_k` is von Neumann regular over `ℤG`
//! (`∂_k·B·∂_k = ∂_k` for some `B`) and (b2) `H_k(C) = 0`. Both outcomes
//! come with certificates that can be re-checked by matrix arithmetic.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::{coboundary, coboundary_membership, coboundary_target, FreeChainComplex};
use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::integer::{membership, IntMatrix, LatticeCoords, NonMembership};
use crate::module::{FPModule, LatticeModule};
use crate::ring::{solve_right, GroupRingElement, GroupRingMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SilenceKind {
    Silent,
    NotSilent,
}

/// Which half of the criterion failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailedCondition {
    Retraction,
    Homology,
}

/// A cycle in `C_k` (flattened coordinates) that is not a boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyWitness {
    #[serde(with = "crate::integer::json::vec")]
    pub cycle: Vec<BigInt>,
    /// Against `flatten(∂_{k+1})`.
    pub certificate: NonMembership,
}

/// A coefficient module `R = L/N` and a degree-`k` cocycle that is not a coboundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub description: String,
    pub module: FPModule,
    /// `ρ(g)·N = N·T_g` for every `g`.
    pub relation_transport: Vec<IntMatrix>,
    /// The cochain in `L^{r_k}`, one block per free generator of `C_k`.
    #[serde(with = "crate::integer::json::vec")]
    pub cocycle: Vec<BigInt>,
    /// `δ^k(cocycle) = (N ⊕ … ⊕ N)·cocycle_relations`.
    #[serde(with = "crate::integer::json::vec")]
    pub cocycle_relations: Vec<BigInt>,
    /// Against `[δ^{k−1} | N ⊕ … ⊕ N]`.
    pub certificate: NonMembership,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SilenceCertificate {
    pub degree: i64,
    pub kind: SilenceKind,
    /// `B` with `∂_k·B·∂_k = ∂_k`.
    pub retraction: Option<GroupRingMatrix>,
    /// `W` with `∂_{k+1}·W = 1 − B·∂_k`; together with `B` this shows `H_k = 0`.
    pub cycle_filling: Option<GroupRingMatrix>,
    pub failed: Option<FailedCondition>,
    /// Against the linear system for `∂_k·B·∂_k = ∂_k`.
    pub retraction_obstruction: Option<NonMembership>,
    pub homology_witness: Option<HomologyWitness>,
    pub counterexample: Option<Counterexample>,
}

impl SilenceCertificate {
    pub fn is_silent(&self) -> bool {
        self.kind == SilenceKind::Silent
    }

    /// Re-checks every witness against `c` using only products and comparisons.
    pub fn verify(&self, c: &FreeChainComplex) -> std::result::Result<(), String> {
        let g = c.group();
        let k = self.degree;
        let d = c.boundary(k);
        let check_b = |b: &GroupRingMatrix| -> std::result::Result<(), String> {
            if b.shape() != (d.cols(), d.rows()) || b.check(g).is_err() {
                return Err("retraction has the wrong shape".into());
            }
            if d.mul(b, g).mul(&d, g) != d {
                return Err("D·B·D differs from D".into());
            }
            Ok(())
        };
        match (self.kind, self.failed) {
            (SilenceKind::Silent, None) => {
                let b = self.retraction.as_ref().ok_or("silent certificate lacks B")?;
                let w = self.cycle_filling.as_ref().ok_or("silent certificate lacks W")?;
                check_b(b)?;
                let up = c.boundary(k + 1);
                if w.shape() != (up.cols(), d.cols()) || w.check(g).is_err() {
                    return Err("filling has the wrong shape".into());
                }
                let p = GroupRingMatrix::identity(d.cols()).sub(&b.mul(&d, g));
                if up.mul(w, g) != p {
                    return Err("∂·W differs from 1 − B·D".into());
                }
                Ok(())
            }
            (SilenceKind::NotSilent, Some(FailedCondition::Retraction)) => {
                if self.homology_witness.is_some() {
                    return Err("both failure witnesses present".into());
                }
                let cert = self.retraction_obstruction.as_ref().ok_or("missing retraction obstruction")?;
                let (system, rhs) = retraction_system(&d, g);
                if !cert.verify(&system, &rhs) {
                    return Err("retraction obstruction does not verify".into());
                }
                verify_counterexample(c, k, self.counterexample.as_ref())
            }
            (SilenceKind::NotSilent, Some(FailedCondition::Homology)) => {
                if self.retraction_obstruction.is_some() {
                    return Err("both failure witnesses present".into());
                }
                let w = self.homology_witness.as_ref().ok_or("missing homology witness")?;
                if !c.flat_boundary(k).mul_vec(&w.cycle).iter().all(num_traits::Zero::is_zero) {
                    return Err("homology witness is not a cycle".into());
                }
                if !w.certificate.verify(&c.flat_boundary(k + 1), &w.cycle) {
                    return Err("homology witness certificate does not verify".into());
                }
                if let Some(b) = &self.retraction {
                    check_b(b)?;
                }
                verify_counterexample(c, k, self.counterexample.as_ref())
            }
            _ => Err("inconsistent certificate kind".into()),
        }
    }
}

fn verify_counterexample(c: &FreeChainComplex, k: i64, cx: Option<&Counterexample>) -> std::result::Result<(), String> {
    let cx = cx.ok_or("missing counterexample module")?;
    let g = c.group();
    let l = &cx.module.ambient;
    let n = &cx.module.relations;
    if !l.has_shape(g) || !l.actions()[0].is_identity() || n.rows() != l.rank() {
        return Err("counterexample action has the wrong shape".into());
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if l.action(a).mul(l.action(b)) != *l.action(g.mul(a, b)) {
                return Err("counterexample action is not multiplicative".into());
            }
        }
        let t = cx.relation_transport.get(a).ok_or("missing relation transport")?;
        if t.rows() != n.cols() || t.cols() != n.cols() {
            return Err("relation transport has the wrong shape".into());
        }
        if n.cols() > 0 && l.action(a).mul(n) != n.mul(t) {
            return Err("relations are not invariant".into());
        }
    }
    let delta = coboundary(c, l, k);
    if delta.cols() != cx.cocycle.len() {
        return Err("cocycle has the wrong length".into());
    }
    let image = delta.mul_vec(&cx.cocycle);
    let blocks: Vec<&IntMatrix> = (0..c.rank(k + 1)).map(|_| n).collect();
    let rel = if blocks.is_empty() { IntMatrix::zeros(0, 0) } else { IntMatrix::block_diag(&blocks) };
    let expected = if rel.cols() == 0 {
        vec![BigInt::from(0); image.len()]
    } else {
        if rel.cols() != cx.cocycle_relations.len() {
            return Err("cocycle relation coefficients have the wrong length".into());
        }
        rel.mul_vec(&cx.cocycle_relations)
    };
    if image != expected {
        return Err("cochain is not a cocycle".into());
    }
    let target = coboundary_target(c, &cx.module, k);
    if !cx.certificate.verify(&target, &cx.cocycle) {
        return Err("cocycle non-triviality certificate does not verify".into());
    }
    Ok(())
}

/// Linear system in the coefficients of `B` for `D·B·D = D`. The unknown for
/// `B[i][j]` at group element `g` sits in column `(i·rows(D) + j)·|G| + g`; its
/// column is the coefficient vector of `D[:, i]·g·D[j, :]`.
pub fn retraction_system(d: &GroupRingMatrix, group: &GroupData) -> (IntMatrix, Vec<BigInt>) {
    let (m, n) = d.shape();
    let order = group.order();
    let rows = m * n * order;
    let cols = n * m * order;
    let mut system = IntMatrix::zeros(rows, cols);
    for i in 0..n {
        for j in 0..m {
            for g in 0..order {
                let col = (i * m + j) * order + g;
                let mid = GroupRingElement::basis(g);
                for a in 0..m {
                    let left = d.get(a, i);
                    if left.is_zero() {
                        continue;
                    }
                    let lg = left.mul(&mid, group);
                    for c in 0..n {
                        let right = d.get(j, c);
                        if right.is_zero() {
                            continue;
                        }
                        for (h, v) in lg.mul(right, group).terms() {
                            system[((a * n + c) * order + h, col)] += v;
                        }
                    }
                }
            }
        }
    }
    let mut rhs = Vec::with_capacity(rows);
    for a in 0..m {
        for c in 0..n {
            rhs.extend(d.get(a, c).coeff_vector(order));
        }
    }
    (system, rhs)
}

/// Some `B` with `D·B·D = D`, or a certificate that none exists.
pub fn find_retraction(
    d: &GroupRingMatrix,
    group: &GroupData,
) -> std::result::Result<GroupRingMatrix, NonMembership> {
    let (m, n) = d.shape();
    let order = group.order();
    let (system, rhs) = retraction_system(d, group);
    let x = membership(&system, &rhs)?;
    let mut b = GroupRingMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let start = (i * m + j) * order;
            b.set(i, j, GroupRingElement::from_coeff_vector(&x[start..start + order]));
        }
    }
    Ok(b)
}

fn coords_blocks(basis: &IntMatrix, vectors: &IntMatrix) -> Option<Vec<BigInt>> {
    if basis.cols() == 0 {
        return Some(Vec::new());
    }
    let coords = LatticeCoords::new(basis.clone());
    let mut out = Vec::new();
    for j in 0..vectors.cols() {
        out.extend(coords.coords(&vectors.column(j))?);
    }
    Some(out)
}

fn build_counterexample(
    c: &FreeChainComplex,
    k: i64,
    description: String,
    module: FPModule,
    cocycle: Vec<BigInt>,
) -> Result<Counterexample> {
    let delta = coboundary(c, &module.ambient, k);
    let image = delta.mul_vec(&cocycle);
    let blocks: Vec<&IntMatrix> = (0..c.rank(k + 1)).map(|_| &module.relations).collect();
    let cocycle_relations = if blocks.is_empty() || module.relations.cols() == 0 {
        if image.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            return Err(Error::Precondition("counterexample cochain is not a cocycle".into()));
        }
        Vec::new()
    } else {
        membership(&IntMatrix::block_diag(&blocks), &image)
            .map_err(|_| Error::Precondition("counterexample cochain is not a cocycle".into()))?
    };
    let certificate = match coboundary_membership(c, &module, k, &cocycle)? {
        Ok(_) => {
            return Err(Error::Precondition(
                "counterexample cocycle turned out to be a coboundary".into(),
            ))
        }
        Err(cert) => cert,
    };
    let relation_transport = module.relation_transport();
    Ok(Counterexample {
        description,
        module,
        relation_transport,
        cocycle,
        cocycle_relations,
        certificate,
    })
}

/// Decides silence in degree `k ≥ 1`.
pub fn silent_in_degree(c: &FreeChainComplex, k: i64) -> Result<SilenceCertificate> {
    if k < 1 {
        return Err(Error::Degree {
            degree: k,
            reason: "silence is only defined in degrees k ≥ 1".into(),
        });
    }
    let v = c.validate();
    if !v.is_valid() {
        return Err(Error::InvalidComplex(format!("{v:?}")));
    }
    let g = c.group();
    let d = c.boundary(k);
    let b = match find_retraction(&d, g) {
        Ok(b) => b,
        Err(obstruction) => {
            // R = B_{k−1} with the cocycle e_i ↦ ∂e_i
            let flat = d.flatten(g);
            let basis = crate::integer::image_basis(&flat);
            let lattice = LatticeModule::free(g, c.rank(k - 1)).restrict(&basis)?;
            let cocycle = coords_blocks(&basis, &d.coeff_matrix(g))
                .ok_or_else(|| Error::Precondition("boundary columns leave B_{k-1}".into()))?;
            let cx = build_counterexample(
                c,
                k,
                format!("B_{} with the cocycle given by the boundary map", k - 1),
                FPModule::from_lattice(lattice),
                cocycle,
            )?;
            return Ok(SilenceCertificate {
                degree: k,
                kind: SilenceKind::NotSilent,
                retraction: None,
                cycle_filling: None,
                failed: Some(FailedCondition::Retraction),
                retraction_obstruction: Some(obstruction),
                homology_witness: None,
                counterexample: Some(cx),
            });
        }
    };
    let p = GroupRingMatrix::identity(d.cols()).sub(&b.mul(&d, g));
    match solve_right(&c.boundary(k + 1), &p, g) {
        Ok(w) => Ok(SilenceCertificate {
            degree: k,
            kind: SilenceKind::Silent,
            retraction: Some(b),
            cycle_filling: Some(w),
            failed: None,
            retraction_obstruction: None,
            homology_witness: None,
            counterexample: None,
        }),
        Err(unsolved) => {
            let cycle = p.column_coeffs(unsolved.column, g);
            // R = H_k with the cocycle e_i ↦ [(1 − B∂)e_i]
            let h = c.homology(k);
            let cocycle = coords_blocks(&h.cycle_basis, &p.coeff_matrix(g))
                .ok_or_else(|| Error::Precondition("projection leaves the cycles".into()))?;
            let cx = build_counterexample(
                c,
                k,
                format!("H_{k} with the cocycle given by the projection onto cycles"),
                h.module,
                cocycle,
            )?;
            Ok(SilenceCertificate {
                degree: k,
                kind: SilenceKind::NotSilent,
                retraction: Some(b),
                cycle_filling: None,
                failed: Some(FailedCondition::Homology),
                retraction_obstruction: None,
                homology_witness: Some(HomologyWitness {
                    cycle,
                    certificate: unsolved.certificate,
                }),
                counterexample: Some(cx),
            })
        }
    }
}

/// Per-degree certificates for `k..=l`.
pub fn silent_in_range(c: &FreeChainComplex, k: i64, l: i64) -> Result<Vec<SilenceCertificate>> {
    if k > l {
        return Err(Error::Degree {
            degree: k,
            reason: format!("empty range [{k}, {l}]"),
        });
    }
    (k..=l).map(|j| silent_in_degree(c, j)).collect()
}

pub fn all_silent(certs: &[SilenceCertificate]) -> bool {
    certs.iter().all(SilenceCertificate::is_silent)
}
