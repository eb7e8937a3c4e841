//! Additivity of obstructions over a pair, and the rank/class comparison for
//! the two ends of a relative complex.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::dual::RankIdentity;
use super::product::ClassVerdict;
use crate::complex::{relative_homology, FreeChainComplex, Subcomplex};
use crate::config::SearchLimits;
use crate::error::{Error, Result};
use crate::integer::smith_normal_form;
use crate::kzero::projective::idempotent_for_projective;
use crate::kzero::registry::Registry;
use crate::kzero::tate::{image_module, projectivity_fingerprint, TateFingerprint};
use crate::kzero::{class_difference, class_dual, class_is_trivial, obstruction, KZeroRep, TrivialityReport};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairReport {
    pub degree: i64,
    /// `ℤ`-rank of `H_k(T, X)`.
    pub relative_rank: usize,
    pub fingerprint: TateFingerprint,
    /// Whether `T` and `X` have the same cells up to degree `k−1`, which is
    /// when `trace(E_T) = trace(E_X) + rank H_k(T, X)` applies.
    pub shared_skeleton: bool,
    pub identities: Vec<RankIdentity>,
    /// `w_k(T) − w_k(X) − (−1)^k [H_k(T, X)]`, when `H_k(T, X)` is projective.
    pub difference: Option<KZeroRep>,
    pub triviality: Option<TrivialityReport>,
}

impl PairReport {
    pub fn verdict(&self) -> ClassVerdict {
        match &self.triviality {
            Some(t) => t.verdict.into(),
            None => ClassVerdict::Unknown,
        }
    }

    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

fn flat_rank(m: &FreeChainComplex, d: i64) -> usize {
    smith_normal_form(&m.flat_boundary(d)).rank()
}

fn as_usize(x: BigInt) -> usize {
    usize::try_from(x).unwrap_or(usize::MAX)
}

fn signed_class(e: crate::ring::GroupRingMatrix, c: &FreeChainComplex, k: i64) -> Result<KZeroRep> {
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    KZeroRep::from_idempotent(c.group_arc().clone(), sign, e)
}

/// Compares `w_k(T)` with `w_k(X) + (−1)^k [H_k(T, X)]` for a basis-aligned
/// subcomplex `X ⊆ T` with `H_j(T, X) = 0` for `j < k`.
pub fn pair_additivity(
    t: &FreeChainComplex,
    x: &Subcomplex,
    k: i64,
    registry: &Registry,
    limits: &SearchLimits,
) -> Result<PairReport> {
    let xc = x.sub_complex(t)?;
    for j in t.bottom_degree()..k {
        let h = relative_homology(t, x, j)?;
        if !h.abelian.is_zero() {
            return Err(Error::Precondition(format!(
                "pair is not (k-1)-connected: H_{j}(T, X) = {}",
                h.abelian
            )));
        }
    }
    let wt = obstruction(t, k)?;
    let wx = obstruction(&xc, k)?;
    let g = t.group();
    let rel = relative_homology(t, x, k)?;
    let relative_rank = rel.abelian.free_rank;
    let fingerprint = projectivity_fingerprint(&rel.module, g);

    // H_k(T, X^{k−1}) with X^{k−1} the cells of X below degree k
    let skeleton = Subcomplex {
        included: x
            .included
            .iter()
            .enumerate()
            .map(|(i, v)| if t.bottom_degree() + (i as i64) < k { v.clone() } else { Vec::new() })
            .collect(),
    };
    let rank_t_skel = relative_homology(t, &skeleton, k)?.abelian.free_rank;
    let trace_t = as_usize(wt.idempotent().flat_trace(g));
    let trace_x = as_usize(wx.idempotent().flat_trace(g));
    let shared_skeleton = (t.bottom_degree()..k).all(|d| t.rank(d) == xc.rank(d));
    let mut identities = vec![
        RankIdentity::new(
            "rank H_k(T, X^{k-1}) = trace(E_X) + rank H_k(T, X)",
            rank_t_skel,
            trace_x + relative_rank,
        ),
        RankIdentity::new("trace(E_X) = rank B_{k-1}(X)", trace_x, flat_rank(&xc, k)),
    ];
    if shared_skeleton {
        identities.push(RankIdentity::new(
            "trace(E_T) = trace(E_X) + rank H_k(T, X)",
            trace_t,
            trace_x + relative_rank,
        ));
    }

    let (difference, triviality) = if fingerprint.projective {
        let e = idempotent_for_projective(&rel.module, g)?;
        let m = signed_class(e, t, k)?;
        let d = class_difference(&class_difference(&wt.class, &wx.class)?, &m)?;
        let tr = class_is_trivial(&d, registry, limits);
        (Some(d), Some(tr))
    } else {
        (None, None)
    };
    Ok(PairReport {
        degree: k,
        relative_rank,
        fingerprint,
        shared_skeleton,
        identities,
        difference,
        triviality,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelativeDualityReport {
    pub dimension: i64,
    pub degree: i64,
    /// The rank bookkeeping of the short exact sequences `0 → B_j → C_j → B_{j−1} → 0`.
    pub cascade: Vec<RankIdentity>,
    pub bottom_rank: usize,
    pub top_rank: usize,
    pub top_fingerprint: TateFingerprint,
    pub dual_fingerprint: TateFingerprint,
    /// `rank H_{n+1−k} ≡ (−1)^n rank H_k* (mod |G|)`.
    pub ranks_agree: bool,
    pub fingerprints_agree: bool,
    /// `[H_{n+1−k}] − (−1)^n [H_k]`.
    pub difference: Option<KZeroRep>,
    pub triviality: Option<TrivialityReport>,
}

impl RelativeDualityReport {
    pub fn verdict(&self) -> ClassVerdict {
        match &self.triviality {
            Some(t) => t.verdict.into(),
            None => ClassVerdict::Unknown,
        }
    }

    pub fn consistent(&self) -> bool {
        self.cascade.iter().all(|i| i.holds) && self.ranks_agree && self.fingerprints_agree
    }
}

/// For `W` supported on `[k, n+1−k]` with no homology strictly inside,
/// compares `H_{n+1−k}(W)` with the dual of `H_k(W)`.
pub fn relative_duality_check(
    w: &FreeChainComplex,
    n: i64,
    k: i64,
    registry: &Registry,
    limits: &SearchLimits,
) -> Result<RelativeDualityReport> {
    let top = n + 1 - k;
    if top < k {
        return Err(Error::Degree {
            degree: k,
            reason: format!("need k <= n + 1 - k, got k = {k}, n = {n}"),
        });
    }
    if let Some((lo, hi)) = w.support() {
        if lo < k || hi > top {
            return Err(Error::Precondition(format!("complex must be supported in [{k}, {top}]")));
        }
    }
    let v = w.validate();
    if !v.is_valid() {
        return Err(Error::InvalidComplex(format!("{v:?}")));
    }
    for j in k + 1..top {
        let h = w.homology(j);
        if !h.abelian.is_zero() {
            return Err(Error::Precondition(format!("H_{j}(W) = {} is nonzero", h.abelian)));
        }
    }
    let g = w.group();
    let order = g.order();
    let hk = w.homology(k);
    let fp_k = projectivity_fingerprint(&hk.module, g);
    if !fp_k.projective {
        return Err(Error::Precondition(format!("H_{k}(W) = {} is not projective", hk.abelian)));
    }
    let htop = w.homology(top);
    let b = |j: i64| flat_rank(w, j + 1);
    let c = |j: i64| w.rank(j) * order;
    let mut cascade = Vec::new();
    if top == k {
        cascade.push(RankIdentity::new("C_k = H_k", c(k), hk.abelian.free_rank));
    } else {
        cascade.push(RankIdentity::new("C_k = B_k + H_k", c(k), b(k) + hk.abelian.free_rank));
        for j in k + 1..top {
            cascade.push(RankIdentity::new(&format!("C_{j} = B_{j} + B_{}", j - 1), c(j), b(j) + b(j - 1)));
        }
        cascade.push(RankIdentity::new(
            &format!("C_{top} = H_{top} + B_{}", top - 1),
            c(top),
            htop.abelian.free_rank + b(top - 1),
        ));
    }

    let e_k = idempotent_for_projective(&hk.module, g)?;
    let dual_k = class_dual(&KZeroRep::from_idempotent(w.group_arc().clone(), 1, e_k.clone())?);
    let dual_fingerprint = projectivity_fingerprint(&image_module(&dual_k.positive()[0], g), g);
    let top_fingerprint = projectivity_fingerprint(&htop.module, g);
    let fingerprints_agree = top_fingerprint.groups() == dual_fingerprint.groups()
        && top_fingerprint.projective == dual_fingerprint.projective;
    let top_rank = htop.abelian.free_rank;
    let dual_rank = as_usize(dual_k.signed_flat_rank());
    let sign: i64 = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    let ranks_agree = (BigInt::from(top_rank) - BigInt::from(sign) * BigInt::from(dual_rank))
        .mod_floor(&BigInt::from(order))
        == BigInt::from(0);

    let (difference, triviality) = if top_fingerprint.projective {
        let e_top = idempotent_for_projective(&htop.module, g)?;
        let top_class = KZeroRep::from_idempotent(w.group_arc().clone(), 1, e_top)?;
        let k_class = KZeroRep::from_idempotent(w.group_arc().clone(), sign as i8, e_k)?;
        let d = class_difference(&top_class, &k_class)?;
        let tr = class_is_trivial(&d, registry, limits);
        (Some(d), Some(tr))
    } else {
        (None, None)
    };
    Ok(RelativeDualityReport {
        dimension: n,
        degree: k,
        cascade,
        bottom_rank: hk.abelian.free_rank,
        top_rank,
        top_fingerprint,
        dual_fingerprint,
        ranks_agree,
        fingerprints_agree,
        difference,
        triviality,
    })
}

/// `W` on `[k, n+1−k]` with `W_j = F` and boundaries `1−E, E, 1−E, …`.
pub fn truncated_alternating(
    group: std::sync::Arc<crate::group::GroupData>,
    e: &crate::ring::GroupRingMatrix,
    n: i64,
    k: i64,
) -> Result<FreeChainComplex> {
    let top = n + 1 - k;
    if top < k {
        return Err(Error::Degree {
            degree: k,
            reason: "empty range".into(),
        });
    }
    let r = e.rows();
    let q = crate::ring::GroupRingMatrix::identity(r).sub(e);
    let ranks = vec![r; (top - k + 1) as usize];
    let boundaries = (k + 1..=top)
        .map(|j| if (j - k) % 2 == 1 { q.clone() } else { e.clone() })
        .collect();
    FreeChainComplex::new_valid(group, k, ranks, boundaries)
}
