//! Realising a projective module as the image of an idempotent matrix.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::integer::{membership, smith_normal_form, IntMatrix};
use crate::module::{FPModule, LatticeModule};
use crate::ring::GroupRingMatrix;

fn spans_everything(m: &IntMatrix) -> bool {
    let s = smith_normal_form(m);
    s.rank() == m.rows() && s.diagonal.iter().all(One::is_one)
}

/// Generators `v_i` (as columns) whose translates span `L` over `ℤ`.
fn module_generators(l: &LatticeModule) -> Vec<Vec<BigInt>> {
    let m = l.rank();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    let mut orbit = IntMatrix::zeros(m, 0);
    for j in 0..m {
        if spans_everything(&orbit) {
            break;
        }
        let mut e = vec![BigInt::from(0); m];
        e[j] = BigInt::one();
        if orbit.cols() > 0 && membership(&orbit, &e).is_ok() {
            continue;
        }
        for a in l.actions() {
            orbit = orbit.hstack(&IntMatrix::column_vector(&a.mul_vec(&e)));
        }
        gens.push(e);
    }
    gens
}

/// An idempotent `E` over `ℤG` with `im E ≅ M`, built from a split surjection
/// `π: ℤG^a → M`. Fails when `M` has torsion or `π` does not split (so `M` is
/// not projective).
pub fn idempotent_for_projective(m: &FPModule, group: &GroupData) -> Result<GroupRingMatrix> {
    let l = m
        .to_lattice()
        .ok_or_else(|| Error::Precondition("module has Z-torsion, so it is not projective".into()))?;
    let rank = l.rank();
    if rank == 0 {
        return Ok(GroupRingMatrix::zeros(0, 0));
    }
    let n = group.order();
    let gens = module_generators(&l);
    let a = gens.len();
    // π: column (i, h) is v_i·h = ρ(h⁻¹)v_i
    let mut pi = IntMatrix::zeros(rank, a * n);
    for (i, v) in gens.iter().enumerate() {
        for h in 0..n {
            let col = l.action(group.inv(h)).mul_vec(v);
            for (r, x) in col.into_iter().enumerate() {
                pi[(r, i * n + h)] = x;
            }
        }
    }
    // section s with rows (i, g) = f_i·ρ(g); unknowns f_i[r] at index i·rank + r
    let mut system = IntMatrix::zeros(rank * rank, a * rank);
    for p in 0..rank {
        for i in 0..a {
            for g in 0..n {
                let coeff = &pi[(p, i * n + g)];
                if num_traits::Zero::is_zero(coeff) {
                    continue;
                }
                let rho = l.action(g);
                for r in 0..rank {
                    for q in 0..rank {
                        let v = coeff * &rho[(r, q)];
                        system[(p * rank + q, i * rank + r)] += v;
                    }
                }
            }
        }
    }
    let identity: Vec<BigInt> = (0..rank * rank)
        .map(|x| if x / rank == x % rank { BigInt::one() } else { BigInt::from(0) })
        .collect();
    let f = membership(&system, &identity)
        .map_err(|_| Error::Precondition("presentation does not split: module is not projective".into()))?;
    let mut s = IntMatrix::zeros(a * n, rank);
    for i in 0..a {
        let fi = IntMatrix::from_vec(1, rank, f[i * rank..(i + 1) * rank].to_vec());
        for g in 0..n {
            let row = fi.mul(l.action(g));
            for q in 0..rank {
                s[(i * n + g, q)] = row[(0, q)].clone();
            }
        }
    }
    debug_assert!(pi.mul(&s).is_identity());
    GroupRingMatrix::unflatten(&s.mul(&pi), group)
}
