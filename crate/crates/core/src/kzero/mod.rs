//! Reduced `K₀` classes as formal differences of idempotent matrices, the
//! cell-dispensability obstruction, and semi-decision of triviality.

pub mod projective;
pub mod registry;
pub mod tate;

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::FreeChainComplex;
use crate::config::SearchLimits;
use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::integer::{image_basis, is_saturated, IntMatrix};
use crate::ring::{solve_right, GroupRingMatrix};
use crate::silence::{silent_in_degree, SilenceCertificate};

use registry::Registry;

/// `sign · (Σ[im P] − Σ[im N])` with every `P`, `N` idempotent.
#[derive(Clone, Debug, PartialEq)]
pub struct KZeroRep {
    group: Arc<GroupData>,
    sign: i8,
    positive: Vec<GroupRingMatrix>,
    negative: Vec<GroupRingMatrix>,
}

impl KZeroRep {
    pub fn new(
        group: Arc<GroupData>,
        sign: i8,
        positive: Vec<GroupRingMatrix>,
        negative: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Malformed("sign must be +1 or -1".into()));
        }
        for (i, e) in positive.iter().chain(&negative).enumerate() {
            e.check(&group)?;
            if !e.is_idempotent(&group) {
                return Err(Error::NotIdempotent(format!(" (entry {i})")));
            }
        }
        Ok(KZeroRep {
            group,
            sign,
            positive,
            negative,
        })
    }

    pub fn zero(group: Arc<GroupData>) -> Self {
        KZeroRep {
            group,
            sign: 1,
            positive: Vec::new(),
            negative: Vec::new(),
        }
    }

    /// `sign·[im E]`.
    pub fn from_idempotent(group: Arc<GroupData>, sign: i8, e: GroupRingMatrix) -> Result<Self> {
        Self::new(group, sign, vec![e], Vec::new())
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupData> {
        &self.group
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn positive(&self) -> &[GroupRingMatrix] {
        &self.positive
    }

    pub fn negative(&self) -> &[GroupRingMatrix] {
        &self.negative
    }

    /// `sign·(Σ rank_ℤ im P − Σ rank_ℤ im N)`.
    pub fn signed_flat_rank(&self) -> BigInt {
        let g = &self.group;
        let p: BigInt = self.positive.iter().map(|e| e.flat_trace(g)).sum();
        let n: BigInt = self.negative.iter().map(|e| e.flat_trace(g)).sum();
        (p - n) * BigInt::from(self.sign)
    }

    pub fn all_idempotent(&self) -> bool {
        self.positive.iter().chain(&self.negative).all(|e| e.is_idempotent(&self.group))
    }
}

fn same_group(a: &KZeroRep, b: &KZeroRep) -> Result<()> {
    if a.group.same_structure(&b.group) {
        Ok(())
    } else {
        Err(Error::GroupMismatch("classes over different groups".into()))
    }
}

pub fn class_negate(a: &KZeroRep) -> KZeroRep {
    KZeroRep {
        group: a.group.clone(),
        sign: a.sign,
        positive: a.negative.clone(),
        negative: a.positive.clone(),
    }
}

/// Concatenation after bringing `b` to the sign of `a`.
pub fn class_sum(a: &KZeroRep, b: &KZeroRep) -> Result<KZeroRep> {
    same_group(a, b)?;
    let b = if a.sign == b.sign { b.clone() } else { class_negate(b) };
    let mut out = a.clone();
    out.positive.extend(b.positive);
    out.negative.extend(b.negative);
    Ok(out)
}

pub fn class_difference(a: &KZeroRep, b: &KZeroRep) -> Result<KZeroRep> {
    class_sum(a, &flip_sign(b))
}

/// `n·a` by repetition.
pub fn class_scale(a: &KZeroRep, n: i64) -> KZeroRep {
    let base = if n < 0 { class_negate(a) } else { a.clone() };
    let mut out = KZeroRep::zero(a.group.clone());
    out.sign = a.sign;
    for _ in 0..n.unsigned_abs() {
        out.positive.extend(base.positive.iter().cloned());
        out.negative.extend(base.negative.iter().cloned());
    }
    out
}

/// The same class with the lists swapped and the sign flipped.
fn flip_sign(a: &KZeroRep) -> KZeroRep {
    let mut out = class_negate(a);
    out.sign = -a.sign;
    out
}

/// `P ↦ P* = Hom(P, ℤG)`, entrywise `E ↦ Ēᵀ`.
pub fn class_dual(a: &KZeroRep) -> KZeroRep {
    let g = &a.group;
    KZeroRep {
        group: g.clone(),
        sign: a.sign,
        positive: a.positive.iter().map(|e| e.conj_transpose(g)).collect(),
        negative: a.negative.iter().map(|e| e.conj_transpose(g)).collect(),
    }
}

/// The obstruction in degree `k`, with the silence certificate it was read from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Obstruction {
    pub degree: i64,
    /// `(−1)^k [im E]` with `E = ∂_k·B`.
    pub class: KZeroRep,
    pub silence: SilenceCertificate,
}

impl Obstruction {
    pub fn idempotent(&self) -> &GroupRingMatrix {
        &self.class.positive[0]
    }
}

/// `(−1)^k [B_{k−1}]`, represented by `E = ∂_k·B` for the retraction `B`.
pub fn obstruction(c: &FreeChainComplex, k: i64) -> Result<Obstruction> {
    let cert = silent_in_degree(c, k)?;
    if !cert.is_silent() {
        return Err(Error::NotSilent(Box::new(cert)));
    }
    let b = cert.retraction.as_ref().expect("silent certificate carries B");
    let e = c.boundary(k).mul(b, c.group());
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let class = KZeroRep::from_idempotent(c.group_arc().clone(), sign, e)?;
    Ok(Obstruction {
        degree: k,
        class,
        silence: cert,
    })
}

/// `X` with columns a `ℤG`-basis of `im E`, and `Y` with `X·Y = E`, `Y·X = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeBasis {
    pub basis: GroupRingMatrix,
    pub coordinates: GroupRingMatrix,
}

impl FreeBasis {
    pub fn verify(&self, e: &GroupRingMatrix, group: &GroupData) -> bool {
        let (x, y) = (&self.basis, &self.coordinates);
        x.check(group).is_ok()
            && y.check(group).is_ok()
            && x.rows() == e.rows()
            && y.cols() == e.cols()
            && x.cols() == y.rows()
            && x.mul(y, group) == *e
            && y.mul(x, group).is_identity()
    }
}

fn basis_candidates(e: &GroupRingMatrix, group: &GroupData, limits: &SearchLimits) -> Vec<GroupRingMatrix> {
    let mut base: Vec<GroupRingMatrix> = Vec::new();
    let push = |list: &mut Vec<GroupRingMatrix>, c: GroupRingMatrix| {
        if !c.is_zero() && !list.contains(&c) {
            list.push(c);
        }
    };
    for i in 0..e.cols() {
        push(&mut base, e.column(i));
    }
    let flat_basis = image_basis(&e.flatten(group));
    for j in 0..flat_basis.cols() {
        push(&mut base, GroupRingMatrix::column_from_coeffs(&flat_basis.column(j), group));
    }
    for i in 0..e.cols() {
        for g in 1..group.order() {
            let c = e.column(i).mul_right_element(&crate::ring::GroupRingElement::basis(g), group);
            push(&mut base, c);
        }
    }
    let mut all = base.clone();
    'outer: for u in 0..base.len() {
        for v in u + 1..base.len() {
            for a in 1..=limits.coefficient_box {
                for b in -limits.coefficient_box..=limits.coefficient_box {
                    if b == 0 {
                        continue;
                    }
                    if all.len() >= limits.max_candidates {
                        break 'outer;
                    }
                    let c = base[u].scale(&BigInt::from(a)).add(&base[v].scale(&BigInt::from(b)));
                    push(&mut all, c);
                }
            }
        }
    }
    all
}

/// Greedy search for a free basis of `im E` (an idempotent), keeping the
/// flattened span of the chosen columns saturated; bounded by `limits`.
pub fn find_free_basis(e: &GroupRingMatrix, group: &GroupData, limits: &SearchLimits) -> Option<FreeBasis> {
    let order = BigInt::from(group.order());
    let trace = e.flat_trace(group);
    if &trace % &order != BigInt::from(0) {
        return None;
    }
    let m: usize = (trace / order).try_into().ok()?;
    if m == 0 {
        return e.is_zero().then(|| FreeBasis {
            basis: GroupRingMatrix::zeros(e.rows(), 0),
            coordinates: GroupRingMatrix::zeros(0, e.cols()),
        });
    }
    let candidates = basis_candidates(e, group, limits);
    let restarts = limits.max_restarts.max(1).min(candidates.len());
    for start in 0..restarts {
        let mut chosen: Vec<GroupRingMatrix> = Vec::new();
        let mut span = IntMatrix::zeros(e.rows() * group.order(), 0);
        for idx in 0..candidates.len() {
            let c = &candidates[(start + idx) % candidates.len()];
            let trial = span.hstack(&c.flatten(group));
            if is_saturated(&trial) {
                span = trial;
                chosen.push(c.clone());
                if chosen.len() == m {
                    break;
                }
            }
        }
        if chosen.len() < m {
            continue;
        }
        let x = chosen
            .iter()
            .fold(GroupRingMatrix::zeros(e.rows(), 0), |acc, c| acc.hstack(c));
        if let Ok(y) = solve_right(&x, e, group) {
            let fb = FreeBasis { basis: x, coordinates: y };
            if fb.verify(e, group) {
                return Some(fb);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Triviality {
    Yes,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Residual {
    /// Nothing left after cancellation.
    Empty,
    Registry { group: String, source: String },
    /// `im(diag(P…, 1−N…) ⊕ 1_s)` is free with the given basis.
    StablyFree { stabilization: usize, witness: FreeBasis },
    /// No certificate found.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialityCertificate {
    /// Identity or zero idempotents (free or zero images), as indices into the lists.
    pub dropped_positive: Vec<usize>,
    pub dropped_negative: Vec<usize>,
    /// `(i, j)`: positive `i` and negative `j` have the same image.
    pub cancelled: Vec<(usize, usize)>,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialityReport {
    pub verdict: Triviality,
    pub certificate: TrivialityCertificate,
}

fn droppable(e: &GroupRingMatrix) -> bool {
    e.is_zero() || e.is_identity()
}

/// `PN = N` and `NP = P`: equal images.
fn same_image(p: &GroupRingMatrix, n: &GroupRingMatrix, g: &GroupData) -> bool {
    p.shape() == n.shape() && p.mul(n, g) == *n && n.mul(p, g) == *p
}

fn residual_matrix(r: &KZeroRep, cert: &TrivialityCertificate, stabilization: usize) -> GroupRingMatrix {
    let used_p: Vec<usize> = cert.dropped_positive.iter().copied().chain(cert.cancelled.iter().map(|c| c.0)).collect();
    let used_n: Vec<usize> = cert.dropped_negative.iter().copied().chain(cert.cancelled.iter().map(|c| c.1)).collect();
    let mut blocks: Vec<GroupRingMatrix> = Vec::new();
    for (i, p) in r.positive.iter().enumerate() {
        if !used_p.contains(&i) {
            blocks.push(p.clone());
        }
    }
    for (j, n) in r.negative.iter().enumerate() {
        if !used_n.contains(&j) {
            blocks.push(GroupRingMatrix::identity(n.rows()).sub(n));
        }
    }
    blocks.push(GroupRingMatrix::identity(stabilization));
    let refs: Vec<&GroupRingMatrix> = blocks.iter().collect();
    GroupRingMatrix::block_diag(&refs)
}

/// Semi-decides whether the class vanishes in `K̃₀(ℤG)`.
pub fn class_is_trivial(r: &KZeroRep, registry: &Registry, limits: &SearchLimits) -> TrivialityReport {
    let g = &r.group;
    let dropped_positive: Vec<usize> = (0..r.positive.len()).filter(|&i| droppable(&r.positive[i])).collect();
    let dropped_negative: Vec<usize> = (0..r.negative.len()).filter(|&j| droppable(&r.negative[j])).collect();
    let mut cancelled = Vec::new();
    let mut used_n = dropped_negative.clone();
    for i in 0..r.positive.len() {
        if dropped_positive.contains(&i) {
            continue;
        }
        if let Some(j) = (0..r.negative.len()).find(|&j| !used_n.contains(&j) && same_image(&r.positive[i], &r.negative[j], g)) {
            used_n.push(j);
            cancelled.push((i, j));
        }
    }
    let mut cert = TrivialityCertificate {
        dropped_positive,
        dropped_negative,
        cancelled,
        residual: Residual::Open,
    };
    let leftover = r.positive.len() + r.negative.len()
        - cert.dropped_positive.len()
        - cert.dropped_negative.len()
        - 2 * cert.cancelled.len();
    if leftover == 0 {
        cert.residual = Residual::Empty;
        return TrivialityReport { verdict: Triviality::Yes, certificate: cert };
    }
    if let Some(entry) = registry.lookup(g).filter(|e| e.is_zero()) {
        cert.residual = Residual::Registry {
            group: entry.group.clone(),
            source: entry.source.clone(),
        };
        return TrivialityReport { verdict: Triviality::Yes, certificate: cert };
    }
    for s in 0..=limits.max_stabilization {
        let e = residual_matrix(r, &cert, s);
        if let Some(witness) = find_free_basis(&e, g, limits) {
            cert.residual = Residual::StablyFree { stabilization: s, witness };
            return TrivialityReport { verdict: Triviality::Yes, certificate: cert };
        }
    }
    TrivialityReport { verdict: Triviality::Unknown, certificate: cert }
}

impl TrivialityCertificate {
    /// Re-checks a `yes` certificate with products and comparisons; the
    /// registry case is a lookup of literature data.
    pub fn verify(&self, r: &KZeroRep, registry: &Registry) -> std::result::Result<(), String> {
        let g = &r.group;
        for &i in &self.dropped_positive {
            if !droppable(r.positive.get(i).ok_or("index out of range")?) {
                return Err(format!("positive {i} is neither zero nor the identity"));
            }
        }
        for &j in &self.dropped_negative {
            if !droppable(r.negative.get(j).ok_or("index out of range")?) {
                return Err(format!("negative {j} is neither zero nor the identity"));
            }
        }
        let mut seen_p: Vec<usize> = self.dropped_positive.clone();
        let mut seen_n: Vec<usize> = self.dropped_negative.clone();
        for &(i, j) in &self.cancelled {
            let p = r.positive.get(i).ok_or("index out of range")?;
            let n = r.negative.get(j).ok_or("index out of range")?;
            if !same_image(p, n, g) {
                return Err(format!("pair ({i}, {j}) does not have equal images"));
            }
            seen_p.push(i);
            seen_n.push(j);
        }
        let dup = |v: &mut Vec<usize>| {
            let before = v.len();
            v.sort_unstable();
            v.dedup();
            before != v.len()
        };
        if dup(&mut seen_p) || dup(&mut seen_n) {
            return Err("an idempotent is used twice".into());
        }
        let leftover = seen_p.len() < r.positive.len() || seen_n.len() < r.negative.len();
        match &self.residual {
            Residual::Empty if !leftover => Ok(()),
            Residual::Empty => Err("uncancelled idempotents remain".into()),
            Residual::Registry { group, .. } => match registry.lookup(g) {
                Some(e) if &e.group == group && e.is_zero() => Ok(()),
                _ => Err("group is not a known-zero registry entry".into()),
            },
            Residual::StablyFree { stabilization, witness } => {
                if *stabilization > crate::format::MAX_RANK {
                    return Err("stabilization exceeds the rank limit".into());
                }
                let e = residual_matrix(r, self, *stabilization);
                if witness.verify(&e, g) {
                    Ok(())
                } else {
                    Err("free basis witness does not verify".into())
                }
            }
            Residual::Open => Err("no certificate".into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelfDuality {
    Consistent,
    /// Reserved for a registry-backed complete invariant; none is shipped, so
    /// this is never produced.
    Violated,
    Unknown,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelfDualReport {
    pub dimension: i64,
    pub verdict: SelfDuality,
    /// `r − (−1)^{n+1}·r*`.
    pub difference: KZeroRep,
    pub triviality: TrivialityReport,
}

/// Tests `r = (−1)^{n+1} r*` by asking whether the difference is trivial.
pub fn check_self_dual(r: &KZeroRep, n: i64, registry: &Registry, limits: &SearchLimits) -> SelfDualReport {
    let dual = class_dual(r);
    let signed = if (n + 1).rem_euclid(2) == 0 { dual } else { flip_sign(&dual) };
    let difference = class_difference(r, &signed).expect("dual lives over the same group");
    let triviality = class_is_trivial(&difference, registry, limits);
    let verdict = match triviality.verdict {
        Triviality::Yes => SelfDuality::Consistent,
        Triviality::Unknown => SelfDuality::Unknown,
    };
    SelfDualReport {
        dimension: n,
        verdict,
        difference,
        triviality,
    }
}
