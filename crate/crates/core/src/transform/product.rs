//! Tensor products over `G × G'` and the product formula for obstructions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::FreeChainComplex;
use crate::config::SearchLimits;
use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::kzero::registry::Registry;
use crate::kzero::{class_difference, class_is_trivial, class_scale, obstruction, KZeroRep, Triviality, TrivialityReport};
use crate::ring::GroupRingMatrix;
use crate::silence::{silent_in_range, SilenceCertificate};

/// `g ↦ (g, e)` in the product indexing `g·|G'| + g'`.
fn left_embedding(right: &GroupData) -> impl Fn(usize) -> usize + Copy {
    let m = right.order();
    let e = right.identity();
    move |g| g * m + e
}

fn right_embedding(left: &GroupData, right: &GroupData) -> impl Fn(usize) -> usize + Copy {
    let m = right.order();
    let e = left.identity();
    move |h| e * m + h
}

/// `M ⊗ 1_n` with entry `((a, b), (a', b'))` equal to `M[a][a']·δ_{bb'}`.
fn kron_left(m: &GroupRingMatrix, n: usize) -> GroupRingMatrix {
    let mut out = GroupRingMatrix::zeros(m.rows() * n, m.cols() * n);
    for a in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(a, c);
            if v.is_zero() {
                continue;
            }
            for b in 0..n {
                out.set(a * n + b, c * n + b, v.clone());
            }
        }
    }
    out
}

/// `1_n ⊗ M`.
fn kron_right(n: usize, m: &GroupRingMatrix) -> GroupRingMatrix {
    let mut out = GroupRingMatrix::zeros(n * m.rows(), n * m.cols());
    for a in 0..n {
        out.paste(a * m.rows(), a * m.cols(), m);
    }
    out
}

/// Offsets of the `(i, j)` blocks inside degree `i + j` of the tensor complex,
/// ordered by `i`.
struct TensorLayout {
    x_lo: i64,
    x_hi: i64,
    a_lo: i64,
    a_hi: i64,
}

impl TensorLayout {
    fn blocks(&self, x: &FreeChainComplex, a: &FreeChainComplex, m: i64) -> Vec<(i64, i64, usize)> {
        let mut offset = 0;
        let mut out = Vec::new();
        for i in self.x_lo..=self.x_hi {
            let j = m - i;
            if j < self.a_lo || j > self.a_hi {
                continue;
            }
            out.push((i, j, offset));
            offset += x.rank(i) * a.rank(j);
        }
        out
    }
}

/// `∂(x⊗a) = ∂x⊗a + (−1)^{|x|} x⊗∂a` over `ℤ(G×G')`.
pub fn tensor_product(x: &FreeChainComplex, a: &FreeChainComplex) -> Result<FreeChainComplex> {
    let (gx, ga) = (x.group(), a.group());
    let product = Arc::new(gx.direct_product(ga));
    let (Some((x_lo, x_hi)), Some((a_lo, a_hi))) = (x.support(), a.support()) else {
        return Ok(FreeChainComplex::empty(product));
    };
    let layout = TensorLayout { x_lo, x_hi, a_lo, a_hi };
    let lo = x_lo + a_lo;
    let hi = x_hi + a_hi;
    let rank = |m: i64| -> usize { layout.blocks(x, a, m).iter().map(|&(i, j, _)| x.rank(i) * a.rank(j)).sum() };
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let ex = left_embedding(ga);
    let ea = right_embedding(gx, ga);
    let mut boundaries = Vec::new();
    for m in lo + 1..=hi {
        let mut d = GroupRingMatrix::zeros(rank(m - 1), rank(m));
        let targets = layout.blocks(x, a, m - 1);
        let find = |i: i64, j: i64| targets.iter().find(|t| t.0 == i && t.1 == j).map(|t| t.2);
        for (i, j, col) in layout.blocks(x, a, m) {
            if let Some(row) = find(i - 1, j) {
                let bx = x.boundary(i).map_support(ex);
                d.paste(row, col, &kron_left(&bx, a.rank(j)));
            }
            if let Some(row) = find(i, j - 1) {
                let ba = a.boundary(j).map_support(ea);
                let block = kron_right(x.rank(i), &ba);
                d.paste(row, col, &if i.rem_euclid(2) == 1 { block.neg() } else { block });
            }
        }
        boundaries.push(d);
    }
    FreeChainComplex::new(product, lo, ranks, boundaries)
}

/// Reinterprets each idempotent along `ℤG → ℤ(G×G')`, `g ↦ (g, e)`.
pub fn induce_class(r: &KZeroRep, other: &GroupData) -> Result<KZeroRep> {
    let product = Arc::new(r.group().direct_product(other));
    let emb = left_embedding(other);
    let map = |list: &[GroupRingMatrix]| list.iter().map(|e| e.map_support(emb)).collect::<Vec<_>>();
    KZeroRep::new(product, r.sign(), map(r.positive()), map(r.negative()))
}

/// `χ(A)` as the alternating sum of free ranks.
pub fn euler_characteristic(a: &FreeChainComplex) -> i64 {
    a.euler_characteristic()
}

/// Alternating sum of `ℤ`-ranks `rank·|G|`.
pub fn flat_euler_characteristic(c: &FreeChainComplex) -> i64 {
    c.euler_characteristic() * c.group().order() as i64
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductReport {
    pub k: i64,
    pub l: i64,
    pub a_dimension: i64,
    pub euler_a: i64,
    pub flat_euler: (i64, i64, i64),
    pub product_silence: Vec<SilenceCertificate>,
    /// `w_{k+a}(X⊗A) − χ(A)·i_*(w_k(X))`.
    pub difference: KZeroRep,
    pub triviality: TrivialityReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassVerdict {
    Consistent,
    Unknown,
}

impl From<Triviality> for ClassVerdict {
    fn from(t: Triviality) -> Self {
        match t {
            Triviality::Yes => ClassVerdict::Consistent,
            Triviality::Unknown => ClassVerdict::Unknown,
        }
    }
}

impl ProductReport {
    pub fn verdict(&self) -> ClassVerdict {
        self.triviality.verdict.into()
    }

    pub fn euler_multiplies(&self) -> bool {
        self.flat_euler.2 == self.flat_euler.0 * self.flat_euler.1
    }
}

pub fn product_formula_check(
    x: &FreeChainComplex,
    k: i64,
    l: i64,
    a: &FreeChainComplex,
    registry: &Registry,
    limits: &SearchLimits,
) -> Result<ProductReport> {
    let dim = match a.support() {
        None => return Err(Error::Precondition("A is empty".into())),
        Some((lo, _)) if lo < 0 => return Err(Error::Precondition("A has negative degrees".into())),
        Some((_, hi)) => hi,
    };
    if dim > l - k {
        return Err(Error::Precondition(format!("dim A = {dim} exceeds l - k = {}", l - k)));
    }
    if !a.validate().is_valid() {
        return Err(Error::InvalidComplex("A fails validation".into()));
    }
    let wx = obstruction(x, k)?;
    for cert in silent_in_range(x, k, l)? {
        if !cert.is_silent() {
            return Err(Error::NotSilent(Box::new(cert)));
        }
    }
    let t = tensor_product(x, a)?;
    let product_silence = silent_in_range(&t, k + dim, l)?;
    if let Some(bad) = product_silence.iter().find(|c| !c.is_silent()) {
        return Err(Error::NotSilent(Box::new(bad.clone())));
    }
    let wt = obstruction(&t, k + dim)?;
    let euler_a = euler_characteristic(a);
    let induced = class_scale(&induce_class(&wx.class, a.group())?, euler_a);
    let difference = class_difference(&wt.class, &induced)?;
    let triviality = class_is_trivial(&difference, registry, limits);
    Ok(ProductReport {
        k,
        l,
        a_dimension: dim,
        euler_a,
        flat_euler: (flat_euler_characteristic(x), flat_euler_characteristic(a), flat_euler_characteristic(&t)),
        product_silence,
        difference,
        triviality,
    })
}

/// `S^a` over the trivial group: ranks 1 in degrees 0 and `a`.
pub fn sphere(a: usize) -> FreeChainComplex {
    let g = Arc::new(GroupData::trivial());
    if a == 0 {
        return FreeChainComplex::new(g, 0, vec![2], Vec::new()).expect("no boundaries");
    }
    let mut ranks = vec![0; a + 1];
    ranks[0] = 1;
    ranks[a] = 1;
    let boundaries = (0..a).map(|i| GroupRingMatrix::zeros(ranks[i], ranks[i + 1])).collect();
    FreeChainComplex::new(g, 0, ranks, boundaries).expect("shapes match")
}

/// Embeds a complex over `G` as one over `G × 1`.
pub fn relabel_trivial_product(c: &FreeChainComplex) -> Result<FreeChainComplex> {
    let g = Arc::new(c.group().direct_product(&GroupData::trivial()));
    c.with_group(g)
}
