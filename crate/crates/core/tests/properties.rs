//! Randomized invariants over chain complexes, classes and transforms.

mod common;

use std::sync::Arc;

use cellgap::complex::{cohomology_local, FreeChainComplex};
use cellgap::config::SearchLimits;
use cellgap::format::{read_complex, resolve_builtin, write_complex};
use cellgap::group::GroupData;
use cellgap::integer::IntMatrix;
use cellgap::kzero::registry::Registry;
use cellgap::kzero::tate::{image_module, projectivity_fingerprint};
use cellgap::kzero::{class_difference, class_is_trivial, obstruction, Triviality};
use cellgap::module::{FPModule, LatticeModule};
use cellgap::realize::{realize_finite, stage_inclusion, RealizationInput};
use cellgap::ring::GroupRingMatrix;
use cellgap::silence::silent_in_degree;
use cellgap::transform::product::{flat_euler_characteristic, sphere};
use cellgap::transform::{cancel_greedy, dualize, tensor_product};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn arb_complex() -> impl Strategy<Value = FreeChainComplex> {
    (any::<u64>(), 0usize..13).prop_map(|(seed, gi)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_complex(&mut rng, &small_groups()[gi])
    })
}

type Realized = (Arc<GroupData>, GroupRingMatrix, i64, FreeChainComplex);

fn arb_known_zero_realization() -> impl Strategy<Value = Realized> {
    (0usize..4, 0usize..8, 4i64..6).prop_map(|(gi, ei, l)| {
        let g = known_zero_groups()[gi].clone();
        let battery = idempotent_battery(&g);
        let e = battery[ei % battery.len()].1.clone();
        let x = realized(&g, &e, 3, l);
        (g, e, l, x)
    })
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_i128().unwrap()).collect()).collect()
}

/// Rank and the nonzero invariant factors by plain row and column reduction.
fn invariant_factors(m: &[Vec<i128>]) -> (usize, Vec<i128>) {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        a.iter_mut().for_each(|row| row.swap(t, pj));
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / p;
            for j in t..cols {
                a[i][j] -= q * a[t][j];
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / p;
            for i in t..rows {
                a[i][j] -= q * a[i][t];
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    (diag.len(), diag)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn complexes_validate_and_euler_characteristics_agree(c in arb_complex()) {
        prop_assert!(c.validate().is_valid());
        let n = c.group().order() as i64;
        let flat: i64 = (c.bottom_degree()..=c.top_degree())
            .map(|d| if d % 2 == 0 { 1 } else { -1 } * (c.rank(d) as i64) * n)
            .sum();
        prop_assert_eq!(flat, flat_euler_characteristic(&c));
        let homology: i64 = (c.bottom_degree()..=c.top_degree())
            .map(|d| if d % 2 == 0 { 1 } else { -1 } * c.homology(d).abelian.free_rank as i64)
            .sum();
        prop_assert_eq!(homology, flat);
    }

    #[test]
    fn trivial_group_homology_matches_direct_elimination(c in arb_complex()) {
        let c = c.with_group(Arc::new(GroupData::trivial())).unwrap_or_else(|_| {
            // flatten onto the trivial group
            let t = Arc::new(GroupData::trivial());
            let bs = c.boundary_list().iter().map(|b| GroupRingMatrix::from_int(&b.flatten(c.group()))).collect();
            let n = c.group().order();
            FreeChainComplex::new(t, c.bottom_degree(), c.ranks().iter().map(|r| r * n).collect(), bs).unwrap()
        });
        for d in c.bottom_degree()..=c.top_degree() {
            let out = to_i128(&c.flat_boundary(d));
            let into = to_i128(&c.flat_boundary(d + 1));
            let (r_out, _) = invariant_factors(&out);
            let (r_in, factors) = invariant_factors(&into);
            let torsion: i128 = factors.iter().product();
            let h = c.homology(d).abelian;
            prop_assert_eq!(h.free_rank, c.rank(d) - r_out - r_in);
            let product = h.torsion.iter().fold(BigInt::from(1), |acc, t| acc * t);
            prop_assert_eq!(product, BigInt::from(torsion));
        }
    }

    #[test]
    fn regular_cohomology_is_homology_of_the_dual(c in arb_complex()) {
        let g = c.group();
        let total: usize = c.ranks().iter().sum::<usize>() * g.order();
        prop_assume!(total <= 24);
        let regular = FPModule::from_lattice(LatticeModule::regular(g));
        // Hom(C, ℤG) flattened: cochains in degree j sit in degree −j
        let t = Arc::new(GroupData::trivial());
        let (lo, hi) = (c.bottom_degree(), c.top_degree());
        let ranks: Vec<usize> = (lo..=hi).rev().map(|d| c.rank(d) * g.order()).collect();
        let bs = (lo + 1..=hi)
            .rev()
            .map(|d| GroupRingMatrix::from_int(&c.flat_boundary(d).transpose()))
            .collect();
        let dual = FreeChainComplex::new(t, -hi, ranks, bs).unwrap();
        prop_assert!(dual.validate().is_valid());
        for j in lo..=hi {
            let h = cohomology_local(&c, &regular, j).unwrap();
            prop_assert_eq!(h, dual.homology(-j).abelian);
        }
    }

    #[test]
    fn silence_certificates_and_projective_boundaries(c in arb_complex()) {
        let g = c.group();
        for k in 1..=3 {
            let cert = silent_in_degree(&c, k).unwrap();
            prop_assert!(cert.verify(&c).is_ok());
            if cert.is_silent() {
                let w = obstruction(&c, k).unwrap();
                let e = w.idempotent();
                prop_assert!(e.is_idempotent(g));
                let n = c.rank(k - 1);
                let complement = GroupRingMatrix::identity(n).sub(e);
                prop_assert_eq!(
                    e.flat_trace(g) + complement.flat_trace(g),
                    BigInt::from(n * g.order())
                );
                let fp = projectivity_fingerprint(&image_module(e, g), g);
                prop_assert!(fp.projective);
            }
        }
    }

    #[test]
    fn dual_is_an_involution(c in arb_complex(), n in 3i64..8) {
        let d = dualize(&c, n).unwrap();
        prop_assert!(d.validate().is_valid());
        // equal up to zero-rank padding at the ends
        prop_assert_eq!(dualize(&d, n).unwrap().trimmed(), c.trimmed());
    }

    #[test]
    fn tensor_products_validate_and_multiply_euler(c in arb_complex(), a in 0usize..4) {
        let s = sphere(a);
        let t = tensor_product(&c, &s).unwrap();
        prop_assert!(t.validate().is_valid());
        prop_assert_eq!(flat_euler_characteristic(&t), flat_euler_characteristic(&c) * s.euler_characteristic());
    }

    #[test]
    fn greedy_cancellation_keeps_homology(c in arb_complex()) {
        let out = cancel_greedy(&c, 1, 3).unwrap();
        prop_assert!(out.certificate.verify(&out.source, &out.complex).is_ok());
        for d in out.source.bottom_degree()..=out.source.top_degree() {
            prop_assert_eq!(out.source.homology(d).abelian, out.complex.homology(d).abelian);
        }
    }

    #[test]
    fn complexes_round_trip_through_json(c in arb_complex()) {
        let text = write_complex(&c);
        let back = read_complex(&text, &resolve_builtin).unwrap();
        prop_assert_eq!(write_complex(&back), text);
        prop_assert_eq!(back, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn obstruction_does_not_depend_on_the_degree((g, _e, l, x) in arb_known_zero_realization()) {
        let (reg, lim) = (Registry::builtin(), SearchLimits::default());
        let classes: Vec<_> = (3..=l).map(|j| obstruction(&x, j).unwrap()).collect();
        for pair in classes.windows(2) {
            let d = class_difference(&pair[0].class, &pair[1].class).unwrap();
            prop_assert_eq!(class_is_trivial(&d, &reg, &lim).verdict, Triviality::Yes);
        }
        for j in 3..=l {
            let rank_b = |d: i64| x.boundary_basis(d).cols();
            prop_assert_eq!(rank_b(j), g.order() * x.rank(j) - rank_b(j - 1));
        }
    }

    #[test]
    fn realizations_are_silent_and_acyclic_in_the_gap((g, e, l, x) in arb_known_zero_realization()) {
        for d in 3..=l {
            prop_assert!(silent_in_degree(&x, d).unwrap().is_silent());
            prop_assert!(x.homology(d).abelian.is_zero());
        }
        // the complement of E survives as homology one degree down
        let q = GroupRingMatrix::identity(e.rows()).sub(&e);
        prop_assert_eq!(BigInt::from(x.homology(2).abelian.free_rank), q.flat_trace(&g));
        let input = RealizationInput::new(FreeChainComplex::point(g.clone()), e.clone(), 3, l).unwrap();
        prop_assert_eq!(&realize_finite(&input).unwrap(), &x);
        for j in 1..input.size().min(3) {
            let (big, sub) = stage_inclusion(&input, j).unwrap();
            prop_assert!(sub.check(&big).is_ok());
        }
    }
}
