//! The integral group ring `ℤG` and matrices over it.
//!
//! Free modules are columns over `ℤG` and matrices act by left
//! multiplication. Flattening replaces each entry `a` by the `|G|×|G|`
//! integer matrix of left multiplication by `a` in the element order of the
//! group, so `flatten(M·N) = flatten(M)·flatten(N)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};
use crate::group::GroupData;
use crate::integer::{membership, IntMatrix, NonMembership};

/// `Σ n_g g` with no zero coefficients stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupRingElement {
    #[serde(with = "crate::integer::json::terms")]
    coeffs: BTreeMap<usize, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(g: usize) -> Self {
        Self::monomial(BigInt::one(), g)
    }

    pub fn monomial(c: impl Into<BigInt>, g: usize) -> Self {
        let mut e = Self::zero();
        e.add_term(c.into(), g);
        e
    }

    pub fn from_pairs<C: Into<BigInt>>(pairs: impl IntoIterator<Item = (C, usize)>) -> Self {
        let mut e = Self::zero();
        for (c, g) in pairs {
            e.add_term(c.into(), g);
        }
        e
    }

    /// Element with coefficient `v[g]` at `g`.
    pub fn from_coeff_vector(v: &[BigInt]) -> Self {
        Self::from_pairs(v.iter().enumerate().map(|(g, c)| (c.clone(), g)))
    }

    pub fn coeff_vector(&self, order: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); order];
        for (&g, c) in &self.coeffs {
            v[g] = c.clone();
        }
        v
    }

    fn add_term(&mut self, c: BigInt, g: usize) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(g).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn coeff(&self, g: usize) -> BigInt {
        self.coeffs.get(&g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn check(&self, g: &GroupData) -> Result<()> {
        match self.max_index() {
            Some(i) if i >= g.order() => Err(malformed(format!(
                "element index {i} out of range for a group of order {}",
                g.order()
            ))),
            _ => Ok(()),
        }
    }

    /// `(sign, g)` when the element is `±g`, i.e. a trivial unit.
    pub fn as_trivial_unit(&self) -> Option<(i8, usize)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (&g, c) = self.coeffs.iter().next()?;
        if c.is_one() {
            Some((1, g))
        } else if (-c).is_one() {
            Some((-1, g))
        } else {
            None
        }
    }

    /// Augmentation `Σ n_g`.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&g, c) in &other.coeffs {
            out.add_term(c.clone(), g);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            coeffs: self.coeffs.iter().map(|(&g, c)| (g, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GroupRingElement {
            coeffs: self.coeffs.iter().map(|(&g, x)| (g, x * c)).collect(),
        }
    }

    /// Convolution product in `ℤG`.
    pub fn mul(&self, other: &Self, group: &GroupData) -> Self {
        let mut out = Self::zero();
        for (&g, a) in &self.coeffs {
            for (&h, b) in &other.coeffs {
                out.add_term(a * b, group.mul(g, h));
            }
        }
        out
    }

    /// `Σ n_g g ↦ Σ ω(g) n_g g⁻¹`.
    pub fn involute(&self, group: &GroupData) -> Self {
        let mut out = Self::zero();
        for (&g, c) in &self.coeffs {
            let c = if group.omega(g) < 0 { -c } else { c.clone() };
            out.add_term(c, group.inv(g));
        }
        out
    }

    /// Transports the element along an injective map of index sets.
    pub fn map_support(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.coeffs.iter().map(|(&g, c)| (c.clone(), f(g))))
    }

    pub fn display_with(&self, group: &GroupData) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (&g, c)) in self.coeffs.iter().enumerate() {
            let name = &group.elements()[g];
            let neg = c.is_negative();
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = c.abs();
            match (a.is_one(), g == 0) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(name),
                (false, true) => s.push_str(&a.to_string()),
                (false, false) => s.push_str(&format!("{a}{name}")),
            }
        }
        s
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(g, c)| format!("{c}*[{g}]")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Left-multiplication matrix of `a`: entry `(h, g)` is the coefficient of `h` in `a·g`.
fn left_mult_block(a: &GroupRingElement, group: &GroupData) -> Vec<(usize, usize, BigInt)> {
    let mut out = Vec::new();
    for (x, c) in a.terms() {
        for g in 0..group.order() {
            out.push((group.mul(x, g), g, c.clone()));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroupRingMatrix")]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

#[derive(Deserialize)]
struct RawGroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl TryFrom<RawGroupRingMatrix> for GroupRingMatrix {
    type Error = String;

    fn try_from(m: RawGroupRingMatrix) -> std::result::Result<Self, String> {
        if m.rows.checked_mul(m.cols) != Some(m.entries.len()) {
            return Err(format!("{}x{} matrix with {} entries", m.rows, m.cols, m.entries.len()));
        }
        Ok(GroupRingMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries,
        })
    }
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            entries: vec![GroupRingElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GroupRingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(malformed("matrix rows have different lengths"));
        }
        Ok(GroupRingMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Shape given explicitly so that empty matrices keep their dimensions.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<GroupRingElement>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        GroupRingMatrix { rows, cols, entries }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(d: &[GroupRingElement]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Matrix with integer entries (coefficients of the identity).
    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, GroupRingElement::monomial(m[(i, j)].clone(), 0));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRingElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }

    pub fn row_vec(&self, i: usize) -> Vec<GroupRingElement> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn check(&self, g: &GroupData) -> Result<()> {
        self.entries.iter().try_for_each(|e| e.check(g))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Self, group: &GroupData) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in group ring product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b, group));
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self, group: &GroupData) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other, group))
    }

    fn zip(&self, other: &Self, f: impl Fn(&GroupRingElement, &GroupRingElement) -> GroupRingElement) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, GroupRingElement::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, GroupRingElement::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(GroupRingElement::neg)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn map(&self, f: impl Fn(&GroupRingElement) -> GroupRingElement) -> Self {
        GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Multiplies every entry on the right by `a`.
    pub fn mul_right_element(&self, a: &GroupRingElement, group: &GroupData) -> Self {
        self.map(|e| e.mul(a, group))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Involute every entry and transpose: `M ↦ M̄ᵀ`.
    pub fn conj_transpose(&self, group: &GroupData) -> Self {
        self.transpose().map(|e| e.involute(group))
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        GroupRingMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Self {
        let r: Vec<usize> = (r0..r0 + rows).collect();
        let c: Vec<usize> = (c0..c0 + cols).collect();
        self.select(&r, &c)
    }

    pub fn column(&self, j: usize) -> Self {
        self.block(0, self.rows, j, 1)
    }

    pub fn is_idempotent(&self, group: &GroupData) -> bool {
        self.rows == self.cols && self.mul(self, group) == *self
    }

    /// Entrywise transport along an injective map of group indices.
    pub fn map_support(&self, f: impl Fn(usize) -> usize + Copy) -> Self {
        self.map(|e| e.map_support(f))
    }

    /// The regular representation: an `(rows·|G|) × (cols·|G|)` integer matrix.
    pub fn flatten(&self, group: &GroupData) -> IntMatrix {
        let n = group.order();
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for (h, g, c) in left_mult_block(self.get(i, j), group) {
                    out[(i * n + h, j * n + g)] += c;
                }
            }
        }
        out
    }

    /// Inverse of [`flatten`](Self::flatten); reads the identity column of each block.
    /// Fails if some block is not a left-multiplication matrix.
    pub fn unflatten(m: &IntMatrix, group: &GroupData) -> Result<Self> {
        let n = group.order();
        if m.rows() % n != 0 || m.cols() % n != 0 {
            return Err(Error::Dimension("size is not a multiple of the group order".into()));
        }
        let (r, c) = (m.rows() / n, m.cols() / n);
        let mut out = Self::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                let v: Vec<BigInt> = (0..n).map(|h| m[(i * n + h, j * n)].clone()).collect();
                out.set(i, j, GroupRingElement::from_coeff_vector(&v));
            }
        }
        if out.flatten(group) != *m {
            return Err(Error::Dimension("integer matrix is not G-equivariant".into()));
        }
        Ok(out)
    }

    /// Coefficient vector of a single column: index `i·|G| + g` holds the
    /// coefficient of `g` in entry `i`. This is the image of the basis vector `(j, e)`.
    pub fn column_coeffs(&self, j: usize, group: &GroupData) -> Vec<BigInt> {
        let mut v = Vec::with_capacity(self.rows * group.order());
        for i in 0..self.rows {
            v.extend(self.get(i, j).coeff_vector(group.order()));
        }
        v
    }

    /// Column over `ℤG` whose coefficient vector is `v`.
    pub fn column_from_coeffs(v: &[BigInt], group: &GroupData) -> Self {
        let n = group.order();
        assert_eq!(v.len() % n, 0);
        let rows = v.len() / n;
        let entries = (0..rows)
            .map(|i| GroupRingElement::from_coeff_vector(&v[i * n..(i + 1) * n]))
            .collect();
        Self::from_entries(rows, 1, entries)
    }

    /// All columns' coefficient vectors, side by side.
    pub fn coeff_matrix(&self, group: &GroupData) -> IntMatrix {
        let n = group.order();
        let mut out = IntMatrix::zeros(self.rows * n, self.cols);
        for j in 0..self.cols {
            for (i, x) in self.column_coeffs(j, group).into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        out
    }

    pub fn from_coeff_matrix(m: &IntMatrix, group: &GroupData) -> Self {
        let mut cols = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            cols.push(Self::column_from_coeffs(&m.column(j), group));
        }
        cols.iter()
            .fold(Self::zeros(m.rows() / group.order(), 0), |acc, c| acc.hstack(c))
    }

    /// Rank over `ℤ` of the image of an idempotent: `trace(flatten E)`.
    pub fn flat_trace(&self, group: &GroupData) -> BigInt {
        // trace of left multiplication by a is |G|·(coefficient of e in a)
        let diag: BigInt = (0..self.rows.min(self.cols)).map(|i| self.get(i, i).coeff(0)).sum();
        diag * BigInt::from(group.order())
    }

    pub fn display_with(&self, group: &GroupData) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).display_with(group)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Debug for GroupRingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingMatrix {}x{} {:?}", self.rows, self.cols, self.entries)
    }
}

/// Failure to solve `A·X = B` over `ℤG`: the first unreachable column of `B`,
/// with a certificate against `flatten(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnsolvableColumn {
    pub column: usize,
    pub certificate: NonMembership,
}

/// Solves `A·X = B` over `ℤG` column by column: column `j` of `X` has
/// coefficient vector `x` with `flatten(A)·x = coeffs(B[:, j])`.
pub fn solve_right(
    a: &GroupRingMatrix,
    b: &GroupRingMatrix,
    group: &GroupData,
) -> std::result::Result<GroupRingMatrix, UnsolvableColumn> {
    assert_eq!(a.rows(), b.rows(), "row mismatch in group ring solve");
    let flat = a.flatten(group);
    let mut x = GroupRingMatrix::zeros(a.cols(), b.cols());
    let n = group.order();
    for j in 0..b.cols() {
        match membership(&flat, &b.column_coeffs(j, group)) {
            Ok(sol) => {
                for i in 0..a.cols() {
                    x.set(i, j, GroupRingElement::from_coeff_vector(&sol[i * n..(i + 1) * n]));
                }
            }
            Err(certificate) => return Err(UnsolvableColumn { column: j, certificate }),
        }
    }
    Ok(x)
}

/// Solves `X·A = B` through the anti-automorphism `M ↦ M̄ᵀ`.
pub fn solve_left(a: &GroupRingMatrix, b: &GroupRingMatrix, group: &GroupData) -> Option<GroupRingMatrix> {
    let at = a.conj_transpose(group);
    let bt = b.conj_transpose(group);
    solve_right(&at, &bt, group).ok().map(|x| x.conj_transpose(group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(pairs: &[(i64, usize)]) -> GroupRingElement {
        GroupRingElement::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn c2_products() {
        let g = GroupData::cyclic(2);
        let a = el(&[(1, 0), (1, 1)]);
        let b = el(&[(1, 0), (-1, 1)]);
        assert!(a.mul(&b, &g).is_zero());
        assert_eq!(a.mul(&GroupRingElement::one(), &g), a);
    }

    #[test]
    fn c3_square() {
        // brute-force convolution over all 3x3 coefficient products
        let g = GroupData::cyclic(3);
        let a = el(&[(1, 0), (1, 1)]);
        let mut expect = [0i64; 3];
        let ca = [1i64, 1, 0];
        for x in 0..3 {
            for y in 0..3 {
                expect[(x + y) % 3] += ca[x] * ca[y];
            }
        }
        assert_eq!(expect, [1, 2, 1]);
        assert_eq!(a.mul(&a, &g), el(&[(1, 0), (2, 1), (1, 2)]));
    }

    #[test]
    fn involution_examples() {
        let g = GroupData::cyclic(2).with_omega(vec![1, -1]).unwrap();
        assert_eq!(el(&[(2, 0), (3, 1)]).involute(&g), el(&[(2, 0), (-3, 1)]));
        let g3 = GroupData::cyclic(3);
        assert_eq!(el(&[(1, 0), (2, 1)]).involute(&g3), el(&[(1, 0), (2, 2)]));
    }

    #[test]
    fn flatten_examples() {
        let g = GroupData::cyclic(2);
        let m = GroupRingMatrix::from_rows(vec![vec![el(&[(1, 0), (1, 1)])]]).unwrap();
        assert_eq!(m.flatten(&g), IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]));
        assert!(GroupRingMatrix::identity(2).flatten(&g).is_identity());
        assert!(GroupRingMatrix::zeros(2, 3).flatten(&g).is_zero());
        let u = GroupRingMatrix::unflatten(&m.flatten(&g), &g).unwrap();
        assert_eq!(u, m);
        assert!(GroupRingMatrix::unflatten(&IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]), &g).is_err());
    }

    #[test]
    fn solve_over_group_ring() {
        let g = GroupData::cyclic(2);
        let a = GroupRingMatrix::from_rows(vec![vec![el(&[(1, 1)])]]).unwrap();
        let b = GroupRingMatrix::from_rows(vec![vec![el(&[(3, 0), (1, 1)])]]).unwrap();
        let x = solve_right(&a, &b, &g).unwrap();
        assert_eq!(a.mul(&x, &g), b);
        let y = solve_left(&a, &b, &g).unwrap();
        assert_eq!(y.mul(&a, &g), b);
        let n = GroupRingMatrix::from_rows(vec![vec![el(&[(1, 0), (1, 1)])]]).unwrap();
        let err = solve_right(&n, &GroupRingMatrix::identity(1), &g).unwrap_err();
        assert!(err.certificate.verify(&n.flatten(&g), &GroupRingMatrix::identity(1).column_coeffs(0, &g)));
    }

    fn groups() -> Vec<GroupData> {
        vec![
            GroupData::cyclic(2).with_omega(vec![1, -1]).unwrap(),
            GroupData::cyclic(4),
            GroupData::symmetric3().with_omega(GroupData::symmetric3().sign_characters()[1].clone()).unwrap(),
            GroupData::elementary_abelian_2(3),
            GroupData::cyclic(2).direct_product(&GroupData::cyclic(4)),
        ]
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(i64, usize)>> {
        proptest::collection::vec((-3i64..4, 0usize..8), 0..5)
    }

    fn reduce(terms: &[(i64, usize)], order: usize) -> GroupRingElement {
        GroupRingElement::from_pairs(terms.iter().map(|&(c, g)| (c, g % order)))
    }

    fn omega_diagonal(g: &GroupData, size: usize) -> IntMatrix {
        let n = g.order();
        let d: Vec<BigInt> = (0..size * n).map(|i| BigInt::from(g.omega(i % n))).collect();
        IntMatrix::diagonal(&d)
    }

    proptest! {
        #[test]
        fn ring_axioms(gi in 0usize..5, ta in arb_terms(), tb in arb_terms(), tc in arb_terms()) {
            let g = &groups()[gi];
            let (a, b, c) = (reduce(&ta, g.order()), reduce(&tb, g.order()), reduce(&tc, g.order()));
            prop_assert_eq!(a.mul(&b, g).mul(&c, g), a.mul(&b.mul(&c, g), g));
            prop_assert_eq!(a.mul(&b.add(&c), g), a.mul(&b, g).add(&a.mul(&c, g)));
            prop_assert_eq!(a.add(&b).mul(&c, g), a.mul(&c, g).add(&b.mul(&c, g)));
            prop_assert_eq!(a.mul(&b, g).involute(g), b.involute(g).mul(&a.involute(g), g));
            prop_assert_eq!(a.involute(g).involute(g), a.clone());

            let m = GroupRingMatrix::from_entries(1, 2, vec![a.clone(), b.clone()]);
            let n = GroupRingMatrix::from_entries(2, 1, vec![c.clone(), a.clone()]);
            prop_assert_eq!(m.mul(&n, g).flatten(g), m.flatten(g).mul(&n.flatten(g)));
            let m2 = GroupRingMatrix::from_entries(1, 2, vec![c.clone(), b.clone()]);
            prop_assert_eq!(m.add(&m2).flatten(g), m.flatten(g).add(&m2.flatten(g)));
            // flatten(M̄ᵀ) = S·flatten(M)ᵀ·S with S the diagonal of ω values
            let lhs = m.conj_transpose(g).flatten(g);
            let rhs = omega_diagonal(g, 2).mul(&m.flatten(g).transpose()).mul(&omega_diagonal(g, 1));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
