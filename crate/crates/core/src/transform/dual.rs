//! Dual complexes and the chain-level self-duality check.

use serde::{Deserialize, Serialize};

use crate::complex::FreeChainComplex;
use crate::config::SearchLimits;
use crate::error::{Error, Result};
use crate::integer::smith_normal_form;
use crate::kzero::registry::Registry;
use crate::kzero::{
    check_self_dual, class_difference, class_is_trivial, obstruction, SelfDuality, Triviality, TrivialityReport,
};
use crate::silence::SilenceCertificate;

/// Sign on `∂^D_j`. Symmetric in `j ↔ n+1−j`, so dualizing twice is the identity.
fn dual_sign(n: i64, j: i64) -> bool {
    (n - j).max(j - 1).rem_euclid(2) == 1
}

/// `D_j = C_{n−j}*` with `∂^D_j = ±(∂^C_{n−j+1})̄ᵀ`.
pub fn dualize(c: &FreeChainComplex, n: i64) -> Result<FreeChainComplex> {
    if let Some((lo, hi)) = c.support() {
        if lo < 0 || hi > n {
            return Err(Error::Degree {
                degree: if lo < 0 { lo } else { hi },
                reason: format!("complex must be supported in [0, {n}] to dualize"),
            });
        }
    }
    if n < 0 {
        return Err(Error::Degree {
            degree: n,
            reason: "formal dimension must be non-negative".into(),
        });
    }
    let g = c.group();
    let ranks = (0..=n).map(|j| c.rank(n - j)).collect();
    let boundaries = (1..=n)
        .map(|j| {
            let b = c.boundary(n - j + 1).conj_transpose(g);
            if dual_sign(n, j) {
                b.neg()
            } else {
                b
            }
        })
        .collect();
    FreeChainComplex::new(c.group_arc().clone(), 0, ranks, boundaries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankIdentity {
    pub name: String,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

impl RankIdentity {
    pub fn new(name: &str, lhs: usize, rhs: usize) -> Self {
        RankIdentity {
            name: name.into(),
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PoincareReport {
    pub dimension: i64,
    pub degree: i64,
    pub identities: Vec<RankIdentity>,
    pub silence: SilenceCertificate,
    pub dual_silence: SilenceCertificate,
    /// `w_k(C) − w_{n−k}(dual)`.
    pub obstructions_agree: TrivialityReport,
    pub self_dual: SelfDuality,
}

impl PoincareReport {
    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

fn flat_rank(m: &crate::integer::IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Compares the obstruction of `C` in degree `k` with that of its dual in
/// degree `n−k`, checks the rank identities behind that comparison, and
/// tests `n`-self-duality of the class.
pub fn poincare_self_duality_check(
    c: &FreeChainComplex,
    n: i64,
    k: i64,
    registry: &Registry,
    limits: &SearchLimits,
) -> Result<PoincareReport> {
    let d = dualize(c, n)?;
    let w = obstruction(c, k)?;
    let w_dual = obstruction(&d, n - k)?;
    let g = c.group();
    let order = g.order();

    let rank_b_dual = flat_rank(&d.flat_boundary(n - k));
    let rank_dual_map = flat_rank(&c.flat_boundary(k + 1).transpose());
    let rank_b = flat_rank(&c.flat_boundary(k));
    let rank_ck = c.rank(k) * order;
    let rank_z = c.cycle_basis(k).cols();
    let rank_dual_b = flat_rank(&c.flat_boundary(k).transpose());
    let identities = vec![
        RankIdentity::new("rank B_{n-k-1}(dual) = rank im(d_{k+1}^*)", rank_b_dual, rank_dual_map),
        RankIdentity::new("rank C_k = rank Z_k + rank B_{k-1}", rank_ck, rank_z + rank_b),
        RankIdentity::new("rank C_k^* = rank im(d_k^*) + rank Z_k", rank_ck, rank_dual_b + rank_z),
        RankIdentity::new("rank B_{n-k-1}(dual) = rank Z_k", rank_b_dual, rank_z),
        RankIdentity::new(
            "trace of dual representative = rank B_{n-k-1}(dual)",
            usize::try_from(w_dual.idempotent().flat_trace(g)).unwrap_or(usize::MAX),
            rank_b_dual,
        ),
    ];
    let diff = class_difference(&w.class, &w_dual.class)?;
    let obstructions_agree = class_is_trivial(&diff, registry, limits);
    let self_dual = check_self_dual(&w.class, n, registry, limits).verdict;
    Ok(PoincareReport {
        dimension: n,
        degree: k,
        identities,
        silence: w.silence,
        dual_silence: w_dual.silence,
        obstructions_agree,
        self_dual,
    })
}

impl PoincareReport {
    pub fn obstructions_consistent(&self) -> bool {
        self.obstructions_agree.verdict == Triviality::Yes
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::GroupData;
    use crate::realize::{realize_finite, RealizationInput};
    use crate::ring::{GroupRingElement, GroupRingMatrix};

    fn rp2(omega: Vec<i8>) -> FreeChainComplex {
        let g = Arc::new(GroupData::cyclic(2).with_omega(omega).unwrap());
        let m = |pairs: &[(i64, usize)]| {
            GroupRingMatrix::from_entries(1, 1, vec![GroupRingElement::from_pairs(pairs.iter().copied())])
        };
        FreeChainComplex::new(g, 0, vec![1, 1, 1], vec![m(&[(-1, 0), (1, 1)]), m(&[(1, 0), (1, 1)])]).unwrap()
    }

    #[test]
    fn point_is_self_dual() {
        let p = FreeChainComplex::point(Arc::new(GroupData::trivial()));
        assert_eq!(dualize(&p, 0).unwrap(), p);
    }

    #[test]
    fn double_dual_is_identity() {
        let c = rp2(vec![1, -1]);
        for n in 2..5 {
            let d = dualize(&c, n).unwrap();
            assert!(d.validate().is_valid());
            assert_eq!(dualize(&d, n).unwrap(), c.padded(0, n));
        }
        assert!(dualize(&c, 1).is_err());
    }

    #[test]
    fn rp2_dual_matches_hand_computation() {
        // ω(t) = −1: (1+t)̄ = 1 − t and (t−1)̄ = −t − 1
        let c = rp2(vec![1, -1]);
        let d = dualize(&c, 2).unwrap();
        let b1 = d.boundary(1);
        let b2 = d.boundary(2);
        let one_minus_t = GroupRingElement::from_pairs([(1, 0), (-1, 1)]);
        let minus_one_minus_t = GroupRingElement::from_pairs([(-1, 0), (-1, 1)]);
        assert!(b1.get(0, 0) == &one_minus_t || b1.get(0, 0) == &one_minus_t.neg());
        assert!(b2.get(0, 0) == &minus_one_minus_t || b2.get(0, 0) == &minus_one_minus_t.neg());
        for j in 0..=2 {
            assert_eq!(d.homology(j).abelian, c.homology(2 - j).abelian, "degree {j}");
        }
    }

    #[test]
    fn sphere_like_complex() {
        let g = Arc::new(GroupData::trivial());
        let mut ranks = vec![0; 7];
        ranks[0] = 1;
        ranks[6] = 1;
        let bs = (0..6)
            .map(|i| GroupRingMatrix::zeros(ranks[i], ranks[i + 1]))
            .collect();
        let s6 = FreeChainComplex::new(g, 0, ranks, bs).unwrap();
        let rep = poincare_self_duality_check(&s6, 6, 3, &Registry::builtin(), &SearchLimits::default()).unwrap();
        assert!(rep.identities_hold());
        assert!(rep.obstructions_consistent());
        assert_eq!(rep.self_dual, SelfDuality::Consistent);
    }

    #[test]
    fn glued_realization() {
        let g = Arc::new(GroupData::cyclic(3));
        let e = GroupRingMatrix::diagonal(&[GroupRingElement::one(), GroupRingElement::zero()]);
        let x = realize_finite(&RealizationInput::new(FreeChainComplex::point(g), e, 3, 4).unwrap()).unwrap();
        let n = 11;
        let glued = x.direct_sum(&dualize(&x, n).unwrap()).unwrap();
        assert!(glued.validate().is_valid());
        let rep = poincare_self_duality_check(&glued, n, 3, &Registry::builtin(), &SearchLimits::default()).unwrap();
        assert!(rep.identities_hold(), "{:?}", rep.identities);
        assert_eq!(rep.self_dual, SelfDuality::Consistent);
    }

    #[test]
    fn rp2_fails_silence() {
        let c = rp2(vec![1, -1]);
        assert!(matches!(
            poincare_self_duality_check(&c, 2, 1, &Registry::builtin(), &SearchLimits::default()),
            Err(Error::NotSilent(_))
        ));
    }
}
