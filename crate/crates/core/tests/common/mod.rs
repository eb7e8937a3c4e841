//! Fixtures shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::sync::Arc;

use cellgap::complex::{FreeChainComplex, Subcomplex};
use cellgap::group::GroupData;
use cellgap::integer::IntMatrix;
use cellgap::kzero::projective::idempotent_for_projective;
use cellgap::module::{FPModule, LatticeModule};
use cellgap::realize::{realize_finite, RealizationInput};
use cellgap::ring::{GroupRingElement, GroupRingMatrix};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn el(pairs: &[(i64, usize)]) -> GroupRingElement {
    GroupRingElement::from_pairs(pairs.iter().copied())
}

pub fn m1(pairs: &[(i64, usize)]) -> GroupRingMatrix {
    GroupRingMatrix::from_entries(1, 1, vec![el(pairs)])
}

pub fn diag(bits: &[bool]) -> GroupRingMatrix {
    let d: Vec<GroupRingElement> = bits
        .iter()
        .map(|&b| if b { GroupRingElement::one() } else { GroupRingElement::zero() })
        .collect();
    GroupRingMatrix::diagonal(&d)
}

/// The cellular chains of the universal cover of `ℝP²`: `∂₁ = t − 1`, `∂₂ = 1 + t`.
pub fn rp2(omega: Vec<i8>) -> FreeChainComplex {
    let g = Arc::new(GroupData::cyclic(2).with_omega(omega).unwrap());
    FreeChainComplex::new(g, 0, vec![1, 1, 1], vec![m1(&[(-1, 0), (1, 1)]), m1(&[(1, 0), (1, 1)])]).unwrap()
}

pub fn dihedral4() -> GroupData {
    GroupData::from_permutations("D4", &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]], None).unwrap()
}

/// Every group of order at most 8 used by the randomized batteries.
pub fn small_groups() -> Vec<Arc<GroupData>> {
    let mut out: Vec<GroupData> = (1..=8).map(GroupData::cyclic).collect();
    out.push(GroupData::elementary_abelian_2(2));
    out.push(GroupData::symmetric3());
    out.push(GroupData::cyclic(4).direct_product(&GroupData::cyclic(2)));
    out.push(GroupData::elementary_abelian_2(3));
    out.push(dihedral4());
    out.into_iter().map(Arc::new).collect()
}

/// Groups whose reduced `K₀` is zero according to the built-in registry.
pub fn known_zero_groups() -> Vec<Arc<GroupData>> {
    vec![
        Arc::new(GroupData::trivial()),
        Arc::new(GroupData::cyclic(2)),
        Arc::new(GroupData::cyclic(3)),
        Arc::new(GroupData::symmetric3()),
    ]
}

/// Diagonal 0/1 idempotents of size 1 and 2.
pub fn diagonal_idempotents() -> Vec<(String, GroupRingMatrix)> {
    let mut out = Vec::new();
    for bits in [vec![false], vec![true], vec![true, false], vec![false, true], vec![true, true]] {
        let name = bits.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        out.push((format!("diag({name})"), diag(&bits)));
    }
    out
}

/// Non-diagonal idempotents: shears of `diag(1, 0)` and the splitting of the
/// rank-one projective presented as `ℤG² / (1, −g)ℤG` computed by the library.
pub fn split_idempotents(g: &GroupData) -> Vec<(String, GroupRingMatrix)> {
    let t = if g.order() > 1 { 1 } else { 0 };
    let mut out = vec![
        (
            "upper-shear".to_string(),
            GroupRingMatrix::from_rows(vec![vec![GroupRingElement::one(), el(&[(1, t)])], vec![
                GroupRingElement::zero(),
                GroupRingElement::zero(),
            ]])
            .unwrap(),
        ),
        (
            "lower-shear".to_string(),
            GroupRingMatrix::from_rows(vec![vec![GroupRingElement::zero(), GroupRingElement::zero()], vec![
                el(&[(-1, t), (1, 0)]),
                GroupRingElement::one(),
            ]])
            .unwrap(),
        ),
    ];
    let p = GroupRingMatrix::from_rows(vec![vec![GroupRingElement::one()], vec![el(&[(-1, t)])]]).unwrap();
    let m = FPModule::from_presentation(&p, g);
    let e = idempotent_for_projective(&m, g).expect("the presented module is free of rank one");
    out.push(("computed-splitting".to_string(), e));
    out
}

pub fn idempotent_battery(g: &GroupData) -> Vec<(String, GroupRingMatrix)> {
    let mut out = diagonal_idempotents();
    out.extend(split_idempotents(g));
    out
}

pub fn realized(g: &Arc<GroupData>, e: &GroupRingMatrix, k: i64, l: i64) -> FreeChainComplex {
    realize_finite(&RealizationInput::new(FreeChainComplex::point(g.clone()), e.clone(), k, l).unwrap()).unwrap()
}

/// `X = realize(E)` on `[3, 5]`; `T` adds `k`-cells with boundary `1−E` into
/// the `F` summand and `(k+1)`-cells with boundary `E` onto them, so that
/// `H_k(T, X) ≅ im(1−E)` and `T`, `X` share their `(k−1)`-skeleton.
pub fn pair_with_complement(g: &Arc<GroupData>, e: &GroupRingMatrix) -> (FreeChainComplex, Subcomplex) {
    let k = 3;
    let x = realized(g, e, k, 5);
    let r = e.rows();
    let q = GroupRingMatrix::identity(r).sub(e);
    let lo = x.bottom_degree();
    let mut ranks = x.ranks().to_vec();
    ranks[(k - lo) as usize] += r;
    ranks[(k + 1 - lo) as usize] += r;
    let boundaries: Vec<GroupRingMatrix> = (lo + 1..=x.top_degree())
        .map(|d| {
            let b = x.boundary(d);
            let (rows, cols) = (ranks[(d - 1 - lo) as usize], ranks[(d - lo) as usize]);
            let mut out = GroupRingMatrix::zeros(rows, cols);
            out.paste(0, 0, &b);
            if d == k {
                out.paste(b.rows() - r, b.cols(), &q);
            } else if d == k + 1 {
                out.paste(b.rows(), b.cols(), e);
            }
            out
        })
        .collect();
    let t = FreeChainComplex::new_valid(g.clone(), lo, ranks, boundaries).unwrap();
    let sub = Subcomplex {
        included: (lo..=x.top_degree()).map(|d| (0..x.rank(d)).collect()).collect(),
    };
    (t, sub)
}

/// `T = X ⊕ (ℤG^r in degrees k and k−1 joined by the identity)`.
pub fn pair_with_contractible(g: &Arc<GroupData>, e: &GroupRingMatrix, r: usize) -> (FreeChainComplex, Subcomplex) {
    let k = 3;
    let x = realized(g, e, k, 5);
    let lo = x.bottom_degree();
    let mut ranks = x.ranks().to_vec();
    ranks[(k - 1 - lo) as usize] += r;
    ranks[(k - lo) as usize] += r;
    let boundaries = (lo + 1..=x.top_degree())
        .map(|d| {
            let b = x.boundary(d);
            let (rows, cols) = (ranks[(d - 1 - lo) as usize], ranks[(d - lo) as usize]);
            let mut out = GroupRingMatrix::zeros(rows, cols);
            out.paste(0, 0, &b);
            if d == k {
                out.paste(b.rows(), b.cols(), &GroupRingMatrix::identity(r));
            }
            out
        })
        .collect();
    let t = FreeChainComplex::new_valid(g.clone(), lo, ranks, boundaries).unwrap();
    let sub = Subcomplex {
        included: (lo..=x.top_degree()).map(|d| (0..x.rank(d)).collect()).collect(),
    };
    (t, sub)
}

pub fn random_element(rng: &mut ChaCha8Rng, g: &GroupData) -> GroupRingElement {
    match rng.gen_range(0..10) {
        0..=4 => GroupRingElement::zero(),
        5..=7 => {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            GroupRingElement::monomial(sign, rng.gen_range(0..g.order()))
        }
        _ => GroupRingElement::from_pairs((0..g.order()).map(|h| (rng.gen_range(-1i64..=1), h))),
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, g: &GroupData, rows: usize, cols: usize) -> GroupRingMatrix {
    let entries = (0..rows * cols).map(|_| random_element(rng, g)).collect();
    GroupRingMatrix::from_entries(rows, cols, entries)
}

fn coefficients_in_unit_box(m: &GroupRingMatrix) -> bool {
    m.entries().iter().all(|e| e.terms().all(|(_, c)| c.magnitude() <= &1u8.into()))
}

/// A valid complex in degrees 1, 2, 3 with ranks at most 3 and coefficients in
/// `{−1, 0, 1}`, drawn from a mix of patterns that produce both silent and
/// non-silent middle degrees.
pub fn random_complex(rng: &mut ChaCha8Rng, g: &Arc<GroupData>) -> FreeChainComplex {
    let ranks: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=3)).collect();
    let (r1, r2, r3) = (ranks[0], ranks[1], ranks[2]);
    let pattern = rng.gen_range(0..5);
    let (d2, d3) = match pattern {
        0 => (random_matrix(rng, g, r1, r2), GroupRingMatrix::zeros(r2, r3)),
        1 => (GroupRingMatrix::zeros(r1, r2), random_matrix(rng, g, r2, r3)),
        2 | 3 if g.order() > 1 => {
            // x·(1 − h) and (1 + h + … + h^{m−1})·y multiply to zero
            let h = rng.gen_range(1..g.order());
            let m = g.element_order(h);
            let mut power = 0;
            let mut norm = Vec::new();
            for _ in 0..m {
                norm.push((1i64, power));
                power = g.mul(power, h);
            }
            let diff = el(&[(1, 0), (-1, h)]);
            let norm = GroupRingElement::from_pairs(norm);
            let (left, right) = if pattern == 2 { (diff, norm) } else { (norm, diff) };
            let mono = |rng: &mut ChaCha8Rng| -> GroupRingElement {
                if rng.gen_bool(0.3) {
                    GroupRingElement::zero()
                } else {
                    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                    GroupRingElement::monomial(s, rng.gen_range(0..g.order()))
                }
            };
            let d2 = GroupRingMatrix::from_entries(
                r1,
                r2,
                (0..r1 * r2).map(|_| mono(rng).mul(&left, g)).collect(),
            );
            let d3 = GroupRingMatrix::from_entries(
                r2,
                r3,
                (0..r2 * r3).map(|_| right.mul(&mono(rng), g)).collect(),
            );
            (d2, d3)
        }
        _ => {
            // rejection sampling, falling back to a single nonzero boundary
            let mut found = None;
            for _ in 0..200 {
                let a = random_matrix(rng, g, r1, r2);
                let b = random_matrix(rng, g, r2, r3);
                if a.mul(&b, g).is_zero() {
                    found = Some((a, b));
                    break;
                }
            }
            found.unwrap_or_else(|| (random_matrix(rng, g, r1, r2), GroupRingMatrix::zeros(r2, r3)))
        }
    };
    debug_assert!(coefficients_in_unit_box(&d2) && coefficients_in_unit_box(&d3));
    FreeChainComplex::new_valid(g.clone(), 1, ranks, vec![d2, d3]).unwrap()
}

fn elementary(n: usize, i: usize, j: usize, c: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    m[(i, j)] = BigInt::from(c);
    m
}

/// A lattice of rank at most 3: a sum of trivial, sign and small permutation
/// modules, conjugated by a random unimodular matrix.
pub fn random_lattice(rng: &mut ChaCha8Rng, g: &GroupData) -> LatticeModule {
    let mut pieces: Vec<LatticeModule> = vec![LatticeModule::trivial(g)];
    for chi in g.sign_characters() {
        pieces.push(LatticeModule::sign(g, &chi).unwrap());
    }
    for h in 0..g.order() {
        let sub = g.subgroup_closure(&[h]);
        if g.order() / sub.len() <= 3 {
            pieces.push(LatticeModule::permutation(g, &sub));
        }
    }
    if g.order() <= 4 {
        pieces.push(LatticeModule::augmentation_ideal(g));
    }
    let target = rng.gen_range(1..=3);
    let mut l = pieces[rng.gen_range(0..pieces.len())].clone();
    while l.rank() < target {
        let fitting: Vec<&LatticeModule> = pieces.iter().filter(|p| p.rank() + l.rank() <= 3).collect();
        if fitting.is_empty() {
            break;
        }
        l = l.direct_sum(fitting[rng.gen_range(0..fitting.len())]);
    }
    let n = l.rank();
    if n < 2 {
        return l;
    }
    let mut p = IntMatrix::identity(n);
    let mut p_inv = IntMatrix::identity(n);
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = rng.gen_range(-2i64..=2);
        p = p.mul(&elementary(n, i, j, c));
        p_inv = elementary(n, i, j, -c).mul(&p_inv);
    }
    l.conjugate(&p, &p_inv).unwrap()
}

/// Regular, trivial, augmentation ideal, and five random lattices.
pub fn coefficient_battery(rng: &mut ChaCha8Rng, g: &GroupData) -> Vec<(String, FPModule)> {
    let mut out = vec![
        ("regular".to_string(), FPModule::from_lattice(LatticeModule::regular(g))),
        ("trivial".to_string(), FPModule::from_lattice(LatticeModule::trivial(g))),
        ("augmentation".to_string(), FPModule::from_lattice(LatticeModule::augmentation_ideal(g))),
    ];
    for i in 0..5 {
        out.push((format!("random-{i}"), FPModule::from_lattice(random_lattice(rng, g))));
    }
    out
}

/// Digest of a serializable value, for compact deterministic reports.
pub fn digest<T: serde::Serialize>(v: &T) -> String {
    use sha2::{Digest, Sha256};
    let bytes = serde_json::to_vec(v).unwrap();
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}
