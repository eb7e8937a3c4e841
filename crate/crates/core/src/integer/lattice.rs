use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix, SmithForm};

/// A finitely generated abelian group `ℤ^free ⊕ ⊕ ℤ/dᵢ` with `1 < d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "super::json::vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// True when every element has order dividing `n` (the free part must vanish).
    pub fn has_exponent_dividing(&self, n: u32) -> bool {
        let n = BigInt::from(n);
        self.free_rank == 0 && self.torsion.iter().all(|d| n.is_multiple_of(d))
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Degreewise direct sum, renormalised to invariant-factor form.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let d: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let mut g = AbelianGroup::from_diagonal(&d, d.len());
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    /// The cokernel of a diagonal map `ℤ^k → ℤ^n` with the given entries.
    pub fn from_diagonal(diag: &[BigInt], n: usize) -> AbelianGroup {
        let s = smith_normal_form(&IntMatrix::diagonal(diag));
        let torsion: Vec<BigInt> = s.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        AbelianGroup {
            free_rank: n - s.rank(),
            torsion,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Certificate that `b` is not in the column span of `A`: a row functional `φ`
/// and a modulus `m` (zero meaning "exactly") with `φ·A ≡ 0` and `φ·b ≢ 0 (mod m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMembership {
    #[serde(with = "super::json::vec")]
    pub functional: Vec<BigInt>,
    #[serde(with = "super::json::int")]
    pub modulus: BigInt,
}

impl NonMembership {
    fn reduce(&self, x: &BigInt) -> BigInt {
        if self.modulus.is_zero() {
            x.clone()
        } else {
            x.mod_floor(&self.modulus)
        }
    }

    /// Re-checks the certificate by plain arithmetic.
    pub fn verify(&self, a: &IntMatrix, b: &[BigInt]) -> bool {
        if self.functional.len() != a.rows() || b.len() != a.rows() {
            return false;
        }
        let row = IntMatrix::from_vec(1, a.rows(), self.functional.clone());
        let fa = row.mul(a);
        let annihilates = (0..a.cols()).all(|j| self.reduce(&fa[(0, j)]).is_zero());
        let fb: BigInt = self.functional.iter().zip(b).map(|(x, y)| x * y).sum();
        annihilates && !self.reduce(&fb).is_zero()
    }
}

/// Basis of `ker A` as columns (a saturated sublattice).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let cols: Vec<usize> = (s.rank()..a.cols()).collect();
    s.v.select_columns(&cols)
}

/// Basis of the column span of `A`.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    image_from_smith(&s)
}

fn image_from_smith(s: &SmithForm) -> IntMatrix {
    let mut out = IntMatrix::zeros(s.rows, s.rank());
    for (j, d) in s.diagonal.iter().enumerate() {
        for i in 0..s.rows {
            out[(i, j)] = &s.u_inv[(i, j)] * d;
        }
    }
    out
}

fn solve_with(s: &SmithForm, b: &[BigInt]) -> Result<Vec<BigInt>, NonMembership> {
    let y = s.u.mul_vec(b);
    let mut z = vec![BigInt::zero(); s.cols];
    for (i, yi) in y.iter().enumerate() {
        if i < s.rank() {
            let d = &s.diagonal[i];
            if !yi.is_multiple_of(d) {
                return Err(NonMembership {
                    functional: s.u.row(i).to_vec(),
                    modulus: d.clone(),
                });
            }
            z[i] = yi / d;
        } else if !yi.is_zero() {
            return Err(NonMembership {
                functional: s.u.row(i).to_vec(),
                modulus: BigInt::zero(),
            });
        }
    }
    Ok(s.v.mul_vec(&z))
}

/// Solves `A·x = b` over the integers, or certifies that no solution exists.
pub fn membership(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>, NonMembership> {
    assert_eq!(a.rows(), b.len(), "right-hand side has the wrong length");
    solve_with(&smith_normal_form(a), b)
}

/// Some integer `x` with `A·x = b`, if one exists.
pub fn solve_integer_linear(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    membership(a, b).ok()
}

/// Basis of `{x : A·x ∈ span N}`.
pub fn preimage_basis(a: &IntMatrix, n: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), n.rows());
    if n.cols() == 0 {
        return kernel_basis(a);
    }
    let k = kernel_basis(&a.hstack(n));
    let top: Vec<usize> = (0..a.cols()).collect();
    let all: Vec<usize> = (0..k.cols()).collect();
    image_basis(&k.select(&top, &all))
}

/// True when the columns of `K` are independent and span a saturated sublattice.
pub fn is_saturated(k: &IntMatrix) -> bool {
    let s = smith_normal_form(k);
    s.rank() == k.cols() && s.diagonal.iter().all(One::is_one)
}

/// Coordinates with respect to a fixed lattice basis.
#[derive(Clone, Debug)]
pub struct LatticeCoords {
    basis: IntMatrix,
    smith: SmithForm,
}

impl LatticeCoords {
    /// `basis` must have independent columns.
    pub fn new(basis: IntMatrix) -> Self {
        let smith = smith_normal_form(&basis);
        assert_eq!(smith.rank(), basis.cols(), "lattice basis columns are dependent");
        LatticeCoords { basis, smith }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_with(&self.smith, v).ok()
    }

    /// Coordinates of every column of `t`; `None` if some column leaves the lattice.
    pub fn coords_matrix(&self, t: &IntMatrix) -> Option<IntMatrix> {
        let mut out = IntMatrix::zeros(self.rank(), t.cols());
        for j in 0..t.cols() {
            let c = self.coords(&t.column(j))?;
            for (i, x) in c.into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        Some(out)
    }
}

/// `span K / span S` for a basis `K` and generators `S` of a sublattice of `span K`.
pub fn subquotient(k: &IntMatrix, s: &IntMatrix) -> AbelianGroup {
    if k.cols() == 0 {
        return AbelianGroup::zero();
    }
    let coords = LatticeCoords::new(k.clone());
    let y = coords
        .coords_matrix(s)
        .expect("subquotient: generators leave the ambient lattice");
    quotient_of_coords(&y)
}

/// `ℤ^p / span Y` for a `p × q` coordinate matrix `Y`.
pub(crate) fn quotient_of_coords(y: &IntMatrix) -> AbelianGroup {
    let sm = smith_normal_form(y);
    AbelianGroup {
        free_rank: y.rows() - sm.rank(),
        torsion: sm.diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_integer_linear(&a, &v(&[4])), Some(v(&[2])));
        let cert = membership(&a, &v(&[3])).unwrap_err();
        assert!(cert.verify(&a, &v(&[3])));

        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]);
        let x = solve_integer_linear(&a, &v(&[1, 2])).unwrap();
        assert_eq!(a.mul_vec(&x), v(&[1, 2]));
        // A is invertible over Q, so the integer solution is unique.
        assert_eq!(x, v(&[0, 1]));
    }

    #[test]
    fn solve_agrees_with_box_search() {
        // Exhaustive oracle over a small box for every 2x2 matrix with entries in [-2,2]
        // against a handful of right-hand sides.
        let range = -2i64..=2;
        let rhs = [v(&[1, 0]), v(&[2, 3]), v(&[1, 1])];
        for a00 in range.clone() {
            for a01 in range.clone() {
                for a10 in range.clone() {
                    for a11 in range.clone() {
                        let a = IntMatrix::from_rows(&[vec![a00, a01], vec![a10, a11]]);
                        for b in &rhs {
                            let found = solve_integer_linear(&a, b);
                            let mut brute = false;
                            for x0 in -6i64..=6 {
                                for x1 in -6i64..=6 {
                                    if a.mul_vec(&v(&[x0, x1])) == *b {
                                        brute = true;
                                    }
                                }
                            }
                            if brute {
                                let x = found.expect("solver missed a box solution");
                                assert_eq!(a.mul_vec(&x), *b);
                            } else if let Some(x) = found {
                                // Solutions outside the box are fine but must be genuine.
                                assert_eq!(a.mul_vec(&x), *b);
                            } else {
                                let cert = membership(&a, b).unwrap_err();
                                assert!(cert.verify(&a, b));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_and_image() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let im = image_basis(&a);
        assert_eq!(im.cols(), 1);
        assert!(is_saturated(&im));
        // ker / im inside Z^2 for the C2 model boundary [[1,1],[1,1]] composed with itself
        let z = kernel_basis(&IntMatrix::from_rows(&[vec![-1, 1], vec![1, -1]]));
        assert_eq!(subquotient(&z, &im), AbelianGroup::zero());
    }

    #[test]
    fn preimage_of_even_lattice() {
        let a = IntMatrix::identity(2);
        let n = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        let p = preimage_basis(&a, &n);
        let all = IntMatrix::identity(2);
        assert_eq!(subquotient(&all, &p).torsion, v(&[2]));
    }

    #[test]
    fn display() {
        let g = AbelianGroup {
            free_rank: 1,
            torsion: v(&[2, 6]),
        };
        assert_eq!(g.to_string(), "Z + Z/2 + Z/6");
        assert_eq!(AbelianGroup::zero().to_string(), "0");
        assert!(AbelianGroup { free_rank: 0, torsion: v(&[2, 2]) }.has_exponent_dividing(2));
    }
}
