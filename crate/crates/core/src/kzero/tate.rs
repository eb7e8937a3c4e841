//! Tate cohomology: the `ℤ/2` quotients of an abelian group with involution,
//! and the Sylow fingerprint used to recognise projective modules.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{malformed, Result};
use crate::group::GroupData;
use crate::integer::{image_basis, membership, preimage_basis, subquotient, AbelianGroup, IntMatrix};
use crate::module::FPModule;

/// `ℤ^n / span(relations)` with an endomorphism `σ` that is an involution on the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutedAbelianGroup {
    /// Relation vectors as columns (`n × q`).
    relations: IntMatrix,
    involution: IntMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    /// `ker(1 − σ) / im(1 + σ)`
    Even,
    /// `ker(1 + σ) / im(1 − σ)`
    Odd,
}

impl InvolutedAbelianGroup {
    /// `relations` are given as columns. Checks that `σ` preserves the relation
    /// lattice and squares to the identity on the quotient.
    pub fn new(generators: usize, relations: IntMatrix, involution: IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(malformed(format!("relations must have {generators} entries")));
        }
        if involution.rows() != generators || involution.cols() != generators {
            return Err(malformed(format!("involution must be {generators}x{generators}")));
        }
        let rel = image_basis(&relations);
        let in_relations = |m: &IntMatrix| -> bool {
            (0..m.cols()).all(|j| membership(&rel, &m.column(j)).is_ok())
        };
        if !in_relations(&involution.mul(&rel)) {
            return Err(malformed("involution does not preserve the relations"));
        }
        let sq = involution.mul(&involution).sub(&IntMatrix::identity(generators));
        if !in_relations(&sq) {
            return Err(malformed("involution does not square to the identity on the quotient"));
        }
        Ok(InvolutedAbelianGroup {
            relations: rel,
            involution,
        })
    }

    pub fn generators(&self) -> usize {
        self.involution.rows()
    }

    pub fn underlying(&self) -> AbelianGroup {
        subquotient(&IntMatrix::identity(self.generators()), &self.relations)
    }
}

/// Result of [`tate_z2`] together with the exponent-two check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateResult {
    pub parity: Parity,
    pub group: AbelianGroup,
    /// `2·ker ⊆ im`, checked generator by generator.
    pub annihilated_by_two: bool,
}

/// `ker(1 − εσ) / im(1 + εσ)` with `ε = +1` for even parity and `−1` for odd.
pub fn tate_z2(a: &InvolutedAbelianGroup, parity: Parity) -> TateResult {
    let n = a.generators();
    let id = IntMatrix::identity(n);
    let eps_sigma = match parity {
        Parity::Even => a.involution.clone(),
        Parity::Odd => a.involution.neg(),
    };
    let kernel_map = id.sub(&eps_sigma);
    let image_map = id.add(&eps_sigma);
    let ker = preimage_basis(&kernel_map, &a.relations);
    let im = image_map.hstack(&a.relations);
    let group = subquotient(&ker, &im);
    let two = BigInt::from(2);
    let annihilated_by_two = (0..ker.cols()).all(|j| {
        let v: Vec<BigInt> = ker.column(j).iter().map(|x| x * &two).collect();
        membership(&im, &v).is_ok()
    });
    TateResult {
        parity,
        group,
        annihilated_by_two,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateEntry {
    pub prime: usize,
    pub subgroup: Vec<usize>,
    /// 0 or 1.
    pub degree: u8,
    pub group: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateFingerprint {
    pub entries: Vec<TateEntry>,
    pub torsion_free: bool,
    pub projective: bool,
}

impl TateFingerprint {
    /// The groups alone, for comparing modules.
    pub fn groups(&self) -> Vec<(usize, u8, AbelianGroup)> {
        self.entries.iter().map(|e| (e.prime, e.degree, e.group.clone())).collect()
    }
}

fn stacked(blocks: &[IntMatrix], cols: usize) -> IntMatrix {
    blocks.iter().fold(IntMatrix::zeros(0, cols), |acc, b| acc.vstack(b))
}

fn repeated(n: &IntMatrix, copies: usize) -> IntMatrix {
    if copies == 0 || n.cols() == 0 {
        return IntMatrix::zeros(n.rows() * copies, 0);
    }
    let blocks: Vec<&IntMatrix> = (0..copies).map(|_| n).collect();
    IntMatrix::block_diag(&blocks)
}

/// `Ĥ⁰(S; L/N) = (L/N)^S / N_S(L/N)`.
fn tate_h0(m: &FPModule, s: &[usize], gens: &[usize]) -> AbelianGroup {
    let l = &m.ambient;
    let rank = l.rank();
    if rank == 0 {
        return AbelianGroup::zero();
    }
    let id = IntMatrix::identity(rank);
    let constraints: Vec<IntMatrix> = gens.iter().map(|&g| l.action(g).sub(&id)).collect();
    let fixed = if gens.is_empty() {
        id.clone()
    } else {
        preimage_basis(&stacked(&constraints, rank), &repeated(&m.relations, gens.len()))
    };
    let norm = s.iter().fold(IntMatrix::zeros(rank, rank), |acc, &g| acc.add(l.action(g)));
    subquotient(&fixed, &norm.hstack(&m.relations))
}

/// `Ĥ¹(S; L/N)`: crossed homomorphisms `f` with `f(gs) = f(g) + g·f(s)` for
/// generators `s`, modulo principal ones `g ↦ g·x − x`.
fn tate_h1(m: &FPModule, group: &GroupData, s: &[usize], gens: &[usize]) -> AbelianGroup {
    let l = &m.ambient;
    let rank = l.rank();
    if rank == 0 {
        return AbelianGroup::zero();
    }
    let pos = |x: usize| s.binary_search(&x).expect("subgroup is closed");
    let size = s.len();
    let mut a = IntMatrix::zeros(size * gens.len() * rank, size * rank);
    let mut row = 0;
    for &g in s {
        for &t in gens {
            let gt = pos(group.mul(g, t));
            let (gi, ti) = (pos(g), pos(t));
            for x in 0..rank {
                a[(row + x, gt * rank + x)] += BigInt::from(1);
                a[(row + x, gi * rank + x)] -= BigInt::from(1);
                for y in 0..rank {
                    let v = l.action(g)[(x, y)].clone();
                    a[(row + x, ti * rank + y)] -= v;
                }
            }
            row += rank;
        }
    }
    let cocycles = preimage_basis(&a, &repeated(&m.relations, size * gens.len()));
    let id = IntMatrix::identity(rank);
    let principal = stacked(&s.iter().map(|&g| l.action(g).sub(&id)).collect::<Vec<_>>(), rank);
    subquotient(&cocycles, &principal.hstack(&repeated(&m.relations, size)))
}

/// Tate cohomology in degrees 0 and 1 over one Sylow subgroup per prime.
/// A `ℤ`-torsion-free module with all entries zero is projective.
pub fn projectivity_fingerprint(m: &FPModule, group: &GroupData) -> TateFingerprint {
    let mut entries = Vec::new();
    for p in group.prime_divisors() {
        let s = group.sylow_subgroup(p);
        let gens = group.generators_of(&s);
        entries.push(TateEntry {
            prime: p,
            subgroup: s.clone(),
            degree: 0,
            group: tate_h0(m, &s, &gens),
        });
        entries.push(TateEntry {
            prime: p,
            subgroup: s.clone(),
            degree: 1,
            group: tate_h1(m, group, &s, &gens),
        });
    }
    let torsion_free = m.abelian_group().is_torsion_free();
    let projective = torsion_free && entries.iter().all(|e| e.group.is_zero());
    TateFingerprint {
        entries,
        torsion_free,
        projective,
    }
}

/// The lattice `im flatten(E)` inside `ℤG^n` as a module.
pub fn image_module(e: &crate::ring::GroupRingMatrix, group: &GroupData) -> FPModule {
    let basis = image_basis(&e.flatten(group));
    let l = crate::module::LatticeModule::free(group, e.rows())
        .restrict(&basis)
        .expect("image of a ZG-map is invariant");
    FPModule::from_lattice(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::LatticeModule;
    use crate::ring::{GroupRingElement, GroupRingMatrix};

    fn z2(rel: i64, sigma: i64) -> InvolutedAbelianGroup {
        InvolutedAbelianGroup::new(1, IntMatrix::from_rows(&[vec![rel]]), IntMatrix::from_rows(&[vec![sigma]]))
            .unwrap()
    }

    fn cyclic(n: i64) -> AbelianGroup {
        AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(n)] }
    }

    #[test]
    fn tate_fixtures() {
        let a = z2(2, 1);
        assert_eq!(tate_z2(&a, Parity::Even).group, cyclic(2));
        assert_eq!(tate_z2(&a, Parity::Odd).group, cyclic(2));
        let z = z2(0, 1);
        assert_eq!(tate_z2(&z, Parity::Even).group, cyclic(2));
        assert!(tate_z2(&z, Parity::Odd).group.is_zero());
        let zneg = z2(0, -1);
        assert!(tate_z2(&zneg, Parity::Even).group.is_zero());
        assert_eq!(tate_z2(&zneg, Parity::Odd).group, cyclic(2));
        for r in [tate_z2(&a, Parity::Even), tate_z2(&z, Parity::Even), tate_z2(&zneg, Parity::Odd)] {
            assert!(r.annihilated_by_two);
            assert!(r.group.has_exponent_dividing(2));
        }
    }

    #[test]
    fn rejects_non_involutions() {
        let bad = InvolutedAbelianGroup::new(1, IntMatrix::zeros(1, 0), IntMatrix::from_rows(&[vec![2]]));
        assert!(bad.is_err());
        // σ = 3 on Z/4 is an involution (9 ≡ 1)
        assert!(InvolutedAbelianGroup::new(1, IntMatrix::from_rows(&[vec![4]]), IntMatrix::from_rows(&[vec![3]])).is_ok());
    }

    #[test]
    fn fingerprints() {
        let g = GroupData::cyclic(2);
        let free = FPModule::from_lattice(LatticeModule::free(&g, 2));
        let f = projectivity_fingerprint(&free, &g);
        assert!(f.projective);
        let triv = FPModule::from_lattice(LatticeModule::trivial(&g));
        let f = projectivity_fingerprint(&triv, &g);
        assert!(!f.projective);
        // Ĥ⁰(C2; Z) = Z/2, Ĥ¹(C2; Z) = Hom(C2, Z) = 0
        assert_eq!(f.entries[0].group, cyclic(2));
        assert!(f.entries[1].group.is_zero());
        let s3 = GroupData::symmetric3();
        let perm = FPModule::from_lattice(LatticeModule::permutation(&s3, &s3.sylow_subgroup(2)));
        assert!(!projectivity_fingerprint(&perm, &s3).projective);
        let reg = FPModule::from_lattice(LatticeModule::regular(&s3));
        assert!(projectivity_fingerprint(&reg, &s3).projective);
    }

    #[test]
    fn fingerprint_of_sum_is_sum_of_fingerprints() {
        let g = GroupData::cyclic(4);
        let a = FPModule::from_lattice(LatticeModule::trivial(&g));
        let b = FPModule::from_lattice(LatticeModule::augmentation_ideal(&g));
        let fa = projectivity_fingerprint(&a, &g);
        let fb = projectivity_fingerprint(&b, &g);
        let fs = projectivity_fingerprint(&a.direct_sum(&b), &g);
        for i in 0..fs.entries.len() {
            assert_eq!(fs.entries[i].group, fa.entries[i].group.direct_sum(&fb.entries[i].group));
        }
    }

    #[test]
    fn image_of_idempotent() {
        let g = GroupData::cyclic(3);
        let e = GroupRingMatrix::diagonal(&[GroupRingElement::one(), GroupRingElement::zero()]);
        let m = image_module(&e, &g);
        assert_eq!(m.ambient.rank(), 3);
        assert!(projectivity_fingerprint(&m, &g).projective);
    }
}
