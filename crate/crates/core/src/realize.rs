//! Chain models of the realizing complexes: a base `Y` with a free summand
//! `F = ℤG^r` wedged on in degree `k−1`, followed by cells whose boundaries
//! alternate between `E` and `1−E`.

use crate::complex::{FreeChainComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::ring::GroupRingMatrix;

#[derive(Clone, Debug)]
pub struct RealizationInput {
    pub base: FreeChainComplex,
    pub idempotent: GroupRingMatrix,
    pub k: i64,
    pub l: i64,
}

impl RealizationInput {
    pub fn new(base: FreeChainComplex, idempotent: GroupRingMatrix, k: i64, l: i64) -> Result<Self> {
        let input = RealizationInput {
            base,
            idempotent,
            k,
            l,
        };
        input.check()?;
        Ok(input)
    }

    pub fn check(&self) -> Result<()> {
        let g = self.base.group();
        self.idempotent.check(g)?;
        if self.idempotent.rows() != self.idempotent.cols() {
            return Err(Error::Dimension("idempotent must be square".into()));
        }
        if !self.idempotent.is_idempotent(g) {
            return Err(Error::NotIdempotent(String::new()));
        }
        if self.k < 3 {
            return Err(Error::Degree {
                degree: self.k,
                reason: "realization needs k >= 3".into(),
            });
        }
        if self.l <= self.k {
            return Err(Error::Degree {
                degree: self.l,
                reason: "realization needs l > k".into(),
            });
        }
        if let Some((_, hi)) = self.base.support() {
            if hi > self.k - 1 {
                return Err(Error::Degree {
                    degree: hi,
                    reason: "base complex must vanish above degree k-1".into(),
                });
            }
        }
        let v = self.base.validate();
        if !v.is_valid() {
            return Err(Error::InvalidComplex(format!("{v:?}")));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.idempotent.rows()
    }
}

/// The base with its stored range extended up to degree `k−1`.
fn base_through(input: &RealizationInput) -> FreeChainComplex {
    input.base.padded(input.k - 1, input.k - 1)
}

/// Appends degrees `k, k+1, …` with the given ranks and boundaries to a
/// complex ending in degree `k−1`.
fn extend(y: &FreeChainComplex, top_rank: usize, new_ranks: &[usize], new_boundaries: Vec<GroupRingMatrix>) -> FreeChainComplex {
    let hi = y.top_degree();
    let lo = y.bottom_degree();
    let mut ranks: Vec<usize> = (lo..hi).map(|d| y.rank(d)).collect();
    ranks.push(y.rank(hi) + top_rank);
    ranks.extend_from_slice(new_ranks);
    let mut boundaries: Vec<GroupRingMatrix> = (lo + 1..hi).map(|d| y.boundary(d)).collect();
    if hi > lo {
        // the extra generators of degree hi are cycles
        let b = y.boundary(hi);
        boundaries.push(b.hstack(&GroupRingMatrix::zeros(b.rows(), top_rank)));
    }
    boundaries.extend(new_boundaries);
    FreeChainComplex::new(y.group_arc().clone(), lo, ranks, boundaries).expect("shapes are consistent")
}

/// `X_k^ℓ`: `C_{k−1} = C_{k−1}(Y) ⊕ F`, `C_j = F` for `k ≤ j ≤ ℓ+1`,
/// `∂_k = [0; E]`, then `∂_j = 1−E` and `E` alternately.
pub fn realize_finite(input: &RealizationInput) -> Result<FreeChainComplex> {
    input.check()?;
    let r = input.size();
    let e = &input.idempotent;
    let q = GroupRingMatrix::identity(r).sub(e);
    let y = base_through(input);
    let yk = y.rank(input.k - 1);
    let mut boundaries = Vec::new();
    boundaries.push(GroupRingMatrix::zeros(yk, r).vstack(e));
    for j in input.k + 1..=input.l + 1 {
        boundaries.push(if (j - input.k) % 2 == 1 { q.clone() } else { e.clone() });
    }
    let ranks = vec![r; (input.l + 2 - input.k) as usize];
    Ok(extend(&y, r, &ranks, boundaries))
}

/// `L_j`: `j` copies of `F` in degree `k−1` and `j−1` cells in degree `k`;
/// cell `s` has boundary `E` into copy `s` plus `1−E` into copy `s+1`.
pub fn realize_stage(input: &RealizationInput, j: usize) -> Result<FreeChainComplex> {
    input.check()?;
    if j == 0 {
        return Err(Error::Precondition("stage index must be at least 1".into()));
    }
    let r = input.size();
    let e = &input.idempotent;
    let q = GroupRingMatrix::identity(r).sub(e);
    let y = base_through(input);
    let yk = y.rank(input.k - 1);
    let mut d = GroupRingMatrix::zeros(yk + j * r, (j - 1) * r);
    for s in 0..j - 1 {
        d.paste(yk + s * r, s * r, e);
        d.paste(yk + (s + 1) * r, s * r, &q);
    }
    let (ranks, boundaries) = if j > 1 { (vec![(j - 1) * r], vec![d]) } else { (Vec::new(), Vec::new()) };
    Ok(extend(&y, j * r, &ranks, boundaries))
}

/// `L_j ⊆ L_{j+1}` as a basis-aligned subcomplex of the larger stage.
pub fn stage_inclusion(input: &RealizationInput, j: usize) -> Result<(FreeChainComplex, Subcomplex)> {
    let big = realize_stage(input, j + 1)?;
    let small = realize_stage(input, j)?;
    let included = (big.bottom_degree()..=big.top_degree())
        .map(|d| (0..small.rank(d)).collect())
        .collect();
    let sub = Subcomplex { included };
    sub.check(&big)?;
    Ok((big, sub))
}
