//! Removing the cells of a degree range by unit-pivot elimination, with
//! chain homotopy equivalences recorded along the way.

use serde::{Deserialize, Serialize};

use crate::complex::FreeChainComplex;
use crate::config::SearchLimits;
use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::kzero::{find_free_basis, FreeBasis};
use crate::ring::{solve_right, GroupRingElement, GroupRingMatrix};
use crate::silence::{find_retraction, silent_in_range};

/// `f: C → C'`, `g: C' → C` with `g∘f − 1 = ∂h + h∂` and `f∘g − 1 = ∂h' + h'∂`.
/// Index `i` of each list refers to degree `bottom + i`; `h[i]` goes from
/// degree `bottom + i` to `bottom + i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyCertificate {
    pub bottom: i64,
    pub f: Vec<GroupRingMatrix>,
    pub g: Vec<GroupRingMatrix>,
    pub h: Vec<GroupRingMatrix>,
    pub h_prime: Vec<GroupRingMatrix>,
}

impl HomotopyCertificate {
    pub fn top(&self) -> i64 {
        self.bottom + self.f.len() as i64 - 1
    }

    /// The identity equivalence of a complex with itself over `[lo, hi]`.
    pub fn identity(c: &FreeChainComplex, lo: i64, hi: i64) -> Self {
        let id = |d: i64| GroupRingMatrix::identity(c.rank(d));
        let zero = |d: i64| GroupRingMatrix::zeros(if d == hi { 0 } else { c.rank(d + 1) }, c.rank(d));
        HomotopyCertificate {
            bottom: lo,
            f: (lo..=hi).map(id).collect(),
            g: (lo..=hi).map(id).collect(),
            h: (lo..=hi).map(zero).collect(),
            h_prime: (lo..=hi).map(zero).collect(),
        }
    }

    fn idx(&self, d: i64) -> usize {
        (d - self.bottom) as usize
    }

    /// `self: A → B` then `next: B → C`.
    pub fn then(&self, next: &HomotopyCertificate, group: &GroupData) -> HomotopyCertificate {
        assert_eq!(self.bottom, next.bottom, "certificates over different ranges");
        assert_eq!(self.f.len(), next.f.len(), "certificates over different ranges");
        let n = self.f.len();
        let mut out = HomotopyCertificate {
            bottom: self.bottom,
            f: Vec::with_capacity(n),
            g: Vec::with_capacity(n),
            h: Vec::with_capacity(n),
            h_prime: Vec::with_capacity(n),
        };
        for i in 0..n {
            out.f.push(next.f[i].mul(&self.f[i], group));
            out.g.push(self.g[i].mul(&next.g[i], group));
            let h = if i + 1 < n {
                self.h[i].add(&self.g[i + 1].mul(&next.h[i], group).mul(&self.f[i], group))
            } else {
                self.h[i].clone()
            };
            out.h.push(h);
            let hp = if i + 1 < n {
                next.h_prime[i].add(&next.f[i + 1].mul(&self.h_prime[i], group).mul(&next.g[i], group))
            } else {
                next.h_prime[i].clone()
            };
            out.h_prime.push(hp);
        }
        out
    }

    /// Checks shapes, both chain-map conditions and both homotopy identities
    /// by matrix products.
    pub fn verify(&self, source: &FreeChainComplex, target: &FreeChainComplex) -> std::result::Result<(), String> {
        let (lo, hi) = (self.bottom, self.top());
        let n = self.f.len();
        if self.g.len() != n || self.h.len() != n || self.h_prime.len() != n {
            return Err("certificate lists have different lengths".into());
        }
        for (name, c) in [("source", source), ("target", target)] {
            if let Some((a, b)) = c.support() {
                if a < lo || b > hi {
                    return Err(format!("{name} complex extends beyond the certificate range"));
                }
            }
        }
        let group = source.group();
        if !group.same_structure(target.group()) {
            return Err("source and target are over different groups".into());
        }
        let rs = |d: i64| if d < lo || d > hi { 0 } else { source.rank(d) };
        let rt = |d: i64| if d < lo || d > hi { 0 } else { target.rank(d) };
        for d in lo..=hi {
            let i = self.idx(d);
            let expect = [
                ("f", &self.f[i], (rt(d), rs(d))),
                ("g", &self.g[i], (rs(d), rt(d))),
                ("h", &self.h[i], (rs(d + 1), rs(d))),
                ("h'", &self.h_prime[i], (rt(d + 1), rt(d))),
            ];
            for (name, m, shape) in expect {
                if m.shape() != shape {
                    return Err(format!("{name} in degree {d} has shape {:?}, expected {shape:?}", m.shape()));
                }
                m.check(group).map_err(|e| e.to_string())?;
            }
        }
        let bs = |d: i64| {
            if d <= lo || d > hi {
                GroupRingMatrix::zeros(rs(d - 1), rs(d))
            } else {
                source.boundary(d)
            }
        };
        let bt = |d: i64| {
            if d <= lo || d > hi {
                GroupRingMatrix::zeros(rt(d - 1), rt(d))
            } else {
                target.boundary(d)
            }
        };
        for d in lo + 1..=hi {
            let i = self.idx(d);
            if self.f[i - 1].mul(&bs(d), group) != bt(d).mul(&self.f[i], group) {
                return Err(format!("f is not a chain map in degree {d}"));
            }
            if self.g[i - 1].mul(&bt(d), group) != bs(d).mul(&self.g[i], group) {
                return Err(format!("g is not a chain map in degree {d}"));
            }
        }
        for d in lo..=hi {
            let i = self.idx(d);
            let gf = self.g[i].mul(&self.f[i], group).sub(&GroupRingMatrix::identity(rs(d)));
            let mut rhs = bs(d + 1).mul(&self.h[i], group);
            if d > lo {
                rhs = rhs.add(&self.h[i - 1].mul(&bs(d), group));
            }
            if gf != rhs {
                return Err(format!("g∘f − 1 ≠ ∂h + h∂ in degree {d}"));
            }
            let fg = self.f[i].mul(&self.g[i], group).sub(&GroupRingMatrix::identity(rt(d)));
            let mut rhs = bt(d + 1).mul(&self.h_prime[i], group);
            if d > lo {
                rhs = rhs.add(&self.h_prime[i - 1].mul(&bt(d), group));
            }
            if fg != rhs {
                return Err(format!("f∘g − 1 ≠ ∂h' + h'∂ in degree {d}"));
            }
        }
        Ok(())
    }
}

fn complex_from(c: &FreeChainComplex, ranks: Vec<usize>, boundaries: Vec<GroupRingMatrix>) -> FreeChainComplex {
    FreeChainComplex::new(c.group_arc().clone(), c.bottom_degree(), ranks, boundaries).expect("shapes are consistent")
}

/// Eliminates generator `j` of degree `d` against generator `i` of degree
/// `d−1`, where `∂_d[i][j]` is a trivial unit.
fn eliminate(c: &FreeChainComplex, d: i64, i: usize, j: usize) -> (FreeChainComplex, HomotopyCertificate) {
    let group = c.group();
    let (lo, hi) = (c.bottom_degree(), c.top_degree());
    let u = c.boundary(d).get(i, j).clone();
    let (sign, g) = u.as_trivial_unit().expect("pivot is a trivial unit");
    let u_inv = GroupRingElement::monomial(sign as i64, group.inv(g));
    let (m, n) = (c.rank(d - 1), c.rank(d));
    let rows: Vec<usize> = (0..m).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..n).filter(|&s| s != j).collect();
    let bd = c.boundary(d);
    let beta = bd.select(&[i], &cols);
    let gamma = bd.select(&rows, &[j]);
    let delta = bd.select(&rows, &cols);
    let correction = gamma.mul_right_element(&u_inv, group).mul(&beta, group);
    let new_bd = delta.sub(&correction);

    let mut ranks: Vec<usize> = c.ranks().to_vec();
    ranks[(d - lo) as usize] -= 1;
    ranks[(d - 1 - lo) as usize] -= 1;
    let boundaries = (lo + 1..=hi)
        .map(|e| {
            let b = c.boundary(e);
            if e == d {
                new_bd.clone()
            } else if e == d + 1 {
                b.select(&cols, &(0..b.cols()).collect::<Vec<_>>())
            } else if e == d - 1 {
                b.select(&(0..b.rows()).collect::<Vec<_>>(), &rows)
            } else {
                b
            }
        })
        .collect();
    let reduced = complex_from(c, ranks, boundaries);

    let mut cert = HomotopyCertificate::identity(c, lo, hi);
    let k = (d - lo) as usize;
    cert.f[k] = GroupRingMatrix::identity(n).select(&cols, &(0..n).collect::<Vec<_>>());
    let mut f_low = GroupRingMatrix::identity(m).select(&rows, &(0..m).collect::<Vec<_>>());
    let col_i = gamma.mul_right_element(&u_inv, group).neg();
    f_low.paste(0, i, &col_i);
    cert.f[k - 1] = f_low;
    let mut g_top = GroupRingMatrix::identity(n).select(&(0..n).collect::<Vec<_>>(), &cols);
    let row_j = beta.map(|x| u_inv.mul(x, group).neg());
    g_top.paste(j, 0, &row_j);
    cert.g[k] = g_top;
    cert.g[k - 1] = GroupRingMatrix::identity(m).select(&(0..m).collect::<Vec<_>>(), &rows);
    let mut h = GroupRingMatrix::zeros(n, m);
    h.set(j, i, u_inv.neg());
    cert.h[k - 1] = h;
    let rt = |e: i64| reduced.rank(e);
    cert.h_prime = (lo..=hi)
        .map(|e| GroupRingMatrix::zeros(if e == hi { 0 } else { rt(e + 1) }, rt(e)))
        .collect();
    (reduced, cert)
}

fn find_unit_pivot(c: &FreeChainComplex, k: i64, l: i64) -> Option<(i64, usize, usize)> {
    for d in k..=l + 1 {
        let b = c.boundary(d);
        for j in 0..b.cols() {
            for i in 0..b.rows() {
                if b.get(i, j).as_trivial_unit().is_some() {
                    return Some((d, i, j));
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CancelMethod {
    Greedy,
    WitnessStabilized,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CancelOutcome {
    pub success: bool,
    pub method: CancelMethod,
    /// The input padded to the certificate range.
    pub source: FreeChainComplex,
    pub complex: FreeChainComplex,
    pub certificate: HomotopyCertificate,
    /// `(degree, rank)` for nonzero ranks left in `[k, l]`.
    pub remaining: Vec<(i64, usize)>,
    /// Number of trivial pairs added in degrees `(j+1, j)`, listed as `(j, count)`.
    pub stabilization: Vec<(i64, usize)>,
    pub reason: Option<String>,
}

fn remaining(c: &FreeChainComplex, k: i64, l: i64) -> Vec<(i64, usize)> {
    (k..=l).filter(|&d| c.rank(d) > 0).map(|d| (d, c.rank(d))).collect()
}

/// Repeated unit-pivot elimination on the boundaries touching `[k, l]`.
fn greedy(c: &FreeChainComplex, k: i64, l: i64) -> (FreeChainComplex, HomotopyCertificate) {
    let (lo, hi) = (c.bottom_degree(), c.top_degree());
    let mut cur = c.clone();
    let mut cert = HomotopyCertificate::identity(c, lo, hi);
    while let Some((d, i, j)) = find_unit_pivot(&cur, k, l) {
        let (next, step) = eliminate(&cur, d, i, j);
        cert = cert.then(&step, c.group());
        cur = next;
    }
    (cur, cert)
}

fn check_input(c: &FreeChainComplex, k: i64, l: i64) -> Result<FreeChainComplex> {
    if k > l {
        return Err(Error::Degree {
            degree: k,
            reason: format!("empty range [{k}, {l}]"),
        });
    }
    let v = c.validate();
    if !v.is_valid() {
        return Err(Error::InvalidComplex(format!("{v:?}")));
    }
    Ok(c.padded(k - 2, l + 2))
}

/// Greedy elimination only.
pub fn cancel_greedy(c: &FreeChainComplex, k: i64, l: i64) -> Result<CancelOutcome> {
    let source = check_input(c, k, l)?;
    let (complex, certificate) = greedy(&source, k, l);
    let rem = remaining(&complex, k, l);
    Ok(CancelOutcome {
        success: rem.is_empty(),
        method: CancelMethod::Greedy,
        source,
        complex,
        certificate,
        reason: (!rem.is_empty()).then(|| "no unit pivot left in the gap".to_string()),
        remaining: rem,
        stabilization: Vec::new(),
    })
}

/// Greedy elimination, then the witness-stabilized procedure if that gets stuck.
pub fn cancel_gap(c: &FreeChainComplex, k: i64, l: i64, limits: &SearchLimits) -> Result<CancelOutcome> {
    let greedy = cancel_greedy(c, k, l)?;
    if greedy.success {
        return Ok(greedy);
    }
    match cancel_with_witness(c, k, l, limits)? {
        Ok(out) => Ok(out),
        Err(reason) => Ok(CancelOutcome {
            reason: Some(format!("greedy elimination stuck; {reason}")),
            ..greedy
        }),
    }
}

fn stabilized_basis(
    e: &GroupRingMatrix,
    group: &GroupData,
    limits: &SearchLimits,
) -> Option<(usize, FreeBasis)> {
    (0..=limits.max_stabilization).find_map(|s| {
        let es = GroupRingMatrix::block_diag(&[e, &GroupRingMatrix::identity(s)]);
        find_free_basis(&es, group, limits).map(|fb| (s, fb))
    })
}

/// Layout of `C̃_d = C_d ⊕ L_d ⊕ U_d`: `L_d` the lower ends of the pairs
/// `(d+1, d)` and `U_d` the upper ends of the pairs `(d, d−1)`.
struct Stabilized {
    pairs: Vec<usize>,
    lo: i64,
}

impl Stabilized {
    fn s(&self, d: i64) -> usize {
        if d < self.lo {
            0
        } else {
            self.pairs.get((d - self.lo) as usize).copied().unwrap_or(0)
        }
    }

    fn rank(&self, c: &FreeChainComplex, d: i64) -> usize {
        c.rank(d) + self.s(d) + self.s(d - 1)
    }

    /// Embeds columns written in `C_d ⊕ (stabilizing part)` into `C̃_d`, the
    /// stabilizing part going to `L_d` (`upper = false`) or `U_d`.
    fn embed(&self, c: &FreeChainComplex, d: i64, x: &GroupRingMatrix, upper: bool) -> GroupRingMatrix {
        let r = c.rank(d);
        let mut out = GroupRingMatrix::zeros(self.rank(c, d), x.cols());
        out.paste(0, 0, &x.block(0, r, 0, x.cols()));
        let extra = x.rows() - r;
        let at = if upper { r + self.s(d) } else { r };
        out.paste(at, 0, &x.block(r, extra, 0, x.cols()));
        out
    }

    fn complex(&self, c: &FreeChainComplex) -> FreeChainComplex {
        let (lo, hi) = (c.bottom_degree(), c.top_degree());
        let ranks = (lo..=hi).map(|d| self.rank(c, d)).collect();
        let boundaries = (lo + 1..=hi)
            .map(|d| {
                let mut b = GroupRingMatrix::zeros(self.rank(c, d - 1), self.rank(c, d));
                b.paste(0, 0, &c.boundary(d));
                // U_d → L_{d−1} by the identity
                b.paste(
                    c.rank(d - 1),
                    c.rank(d) + self.s(d),
                    &GroupRingMatrix::identity(self.s(d - 1)),
                );
                b
            })
            .collect();
        complex_from(c, ranks, boundaries)
    }

    fn certificate(&self, c: &FreeChainComplex, t: &FreeChainComplex) -> HomotopyCertificate {
        let (lo, hi) = (c.bottom_degree(), c.top_degree());
        let mut cert = HomotopyCertificate {
            bottom: lo,
            f: Vec::new(),
            g: Vec::new(),
            h: Vec::new(),
            h_prime: Vec::new(),
        };
        for d in lo..=hi {
            let (r, rt) = (c.rank(d), t.rank(d));
            let mut f = GroupRingMatrix::zeros(rt, r);
            f.paste(0, 0, &GroupRingMatrix::identity(r));
            cert.g.push(f.transpose());
            cert.f.push(f);
            let up = if d == hi { 0 } else { c.rank(d + 1) };
            cert.h.push(GroupRingMatrix::zeros(up, r));
            let up_t = if d == hi { 0 } else { t.rank(d + 1) };
            let mut hp = GroupRingMatrix::zeros(up_t, rt);
            if d < hi {
                // L_d → U_{d+1} by −1
                hp.paste(
                    c.rank(d + 1) + self.s(d + 1),
                    r,
                    &GroupRingMatrix::identity(self.s(d)).neg(),
                );
            }
            cert.h_prime.push(hp);
        }
        cert
    }
}

fn invert(m: &GroupRingMatrix, group: &GroupData) -> Option<GroupRingMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let inv = solve_right(m, &GroupRingMatrix::identity(m.rows()), group).ok()?;
    inv.mul(m, group).is_identity().then_some(inv)
}

/// Stabilizes by trivial pairs, changes basis using free bases of the
/// boundary and cycle summands read off the silence certificates, then
/// eliminates. The outer error is for invalid input; the inner one explains
/// why no witness was found.
pub fn cancel_with_witness(
    c: &FreeChainComplex,
    k: i64,
    l: i64,
    limits: &SearchLimits,
) -> Result<std::result::Result<CancelOutcome, String>> {
    let source = check_input(c, k, l)?;
    let group = source.group();
    let (lo, hi) = (source.bottom_degree(), source.top_degree());
    let certs = match silent_in_range(&source, k, l) {
        Ok(v) => v,
        Err(e) => return Ok(Err(e.to_string())),
    };
    if let Some(bad) = certs.iter().find(|c| !c.is_silent()) {
        return Ok(Err(format!("not silent in degree {}", bad.degree)));
    }
    let mut retractions: Vec<GroupRingMatrix> = certs
        .iter()
        .map(|c| c.retraction.clone().expect("silent certificates carry B"))
        .collect();
    match find_retraction(&source.boundary(l + 1), group) {
        Ok(b) => retractions.push(b),
        Err(_) => return Ok(Err(format!("boundary out of degree {} has no retraction", l + 1))),
    }
    let retraction = |j: i64| &retractions[(j - k) as usize];
    // idempotents cutting out B_{k−1}, its complement, and Z_j for k ≤ j ≤ l+1
    let e_low = source.boundary(k).mul(retraction(k), group);
    let q_low = GroupRingMatrix::identity(source.rank(k - 1)).sub(&e_low);
    let z = |j: i64| GroupRingMatrix::identity(source.rank(j)).sub(&retraction(j).mul(&source.boundary(j), group));

    let find = |e: &GroupRingMatrix, what: &str| {
        stabilized_basis(e, group, limits).ok_or_else(|| format!("no free basis found for {what}"))
    };
    let mut pairs = vec![0usize; (hi - lo + 1) as usize];
    let at = |d: i64| (d - lo) as usize;
    let (s, fb_low) = match find(&e_low, &format!("B_{}", k - 1)) {
        Ok(v) => v,
        Err(e) => return Ok(Err(e)),
    };
    pairs[at(k - 1)] = s;
    let (s, fb_q) = match find(&q_low, &format!("the complement of B_{}", k - 1)) {
        Ok(v) => v,
        Err(e) => return Ok(Err(e)),
    };
    pairs[at(k - 2)] = s;
    let mut fb_z = Vec::new();
    for j in k..=l + 1 {
        let (s, fb) = match find(&z(j), &format!("Z_{j}")) {
            Ok(v) => v,
            Err(e) => return Ok(Err(e)),
        };
        pairs[at(j)] = s;
        fb_z.push(fb);
    }
    let st = Stabilized { pairs, lo };
    let tilde = st.complex(&source);
    let stab_cert = st.certificate(&source, &tilde);

    // new bases M_d, columns [basis of B̃_d or Z̃_d | lifts of the basis below]
    let x_low = st.embed(&source, k - 1, &fb_low.basis, false);
    let mut bases: Vec<(i64, GroupRingMatrix)> = Vec::new();
    bases.push((k - 1, x_low.hstack(&st.embed(&source, k - 1, &fb_q.basis, true))));
    let mut below = x_low;
    for j in k..=l + 1 {
        let xj = st.embed(&source, j, &fb_z[(j - k) as usize].basis, false);
        let lift = match solve_right(&tilde.boundary(j), &below, group) {
            Ok(s) => s,
            Err(_) => return Ok(Err(format!("basis of B_{} does not lift to degree {j}", j - 1))),
        };
        bases.push((j, xj.hstack(&lift)));
        below = xj;
    }
    let mut change = HomotopyCertificate::identity(&tilde, lo, hi);
    for (d, m) in &bases {
        let Some(inv) = invert(m, group) else {
            return Ok(Err(format!("change of basis in degree {d} is not invertible")));
        };
        change.f[at(*d)] = inv;
        change.g[at(*d)] = m.clone();
    }
    let ranks: Vec<usize> = (lo..=hi).map(|d| tilde.rank(d)).collect();
    let boundaries = (lo + 1..=hi)
        .map(|d| change.f[at(d - 1)].mul(&tilde.boundary(d), group).mul(&change.g[at(d)], group))
        .collect();
    let rebased = complex_from(&tilde, ranks, boundaries);
    let (complex, elim_cert) = greedy(&rebased, k, l);
    let certificate = stab_cert.then(&change, group).then(&elim_cert, group);
    let rem = remaining(&complex, k, l);
    if !rem.is_empty() {
        return Ok(Err("elimination after the change of basis left cells in the gap".into()));
    }
    let stabilization = (lo..=hi).filter(|&d| st.s(d) > 0).map(|d| (d, st.s(d))).collect();
    Ok(Ok(CancelOutcome {
        success: true,
        method: CancelMethod::WitnessStabilized,
        source,
        complex,
        certificate,
        remaining: rem,
        stabilization,
        reason: None,
    }))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::realize::{realize_finite, RealizationInput};

    fn one_by_one(pairs: &[(i64, usize)]) -> GroupRingMatrix {
        GroupRingMatrix::from_entries(1, 1, vec![GroupRingElement::from_pairs(pairs.iter().copied())])
    }

    fn two_cells(g: GroupData, entry: &[(i64, usize)], k: i64) -> FreeChainComplex {
        FreeChainComplex::new(Arc::new(g), k - 1, vec![1, 1], vec![one_by_one(entry)]).unwrap()
    }

    fn same_homology(a: &FreeChainComplex, b: &FreeChainComplex) {
        let lo = a.bottom_degree().min(b.bottom_degree());
        let hi = a.top_degree().max(b.top_degree());
        for d in lo..=hi {
            assert_eq!(a.homology(d).abelian, b.homology(d).abelian, "degree {d}");
        }
    }

    #[test]
    fn single_pairs() {
        let c = two_cells(GroupData::trivial(), &[(1, 0)], 3);
        let out = cancel_gap(&c, 3, 3, &SearchLimits::default()).unwrap();
        assert!(out.success);
        out.certificate.verify(&out.source, &out.complex).unwrap();
        assert_eq!(out.complex.support(), None);

        let c = two_cells(GroupData::cyclic(2), &[(-1, 1)], 3);
        let out = cancel_gap(&c, 3, 3, &SearchLimits::default()).unwrap();
        assert!(out.success);
        out.certificate.verify(&out.source, &out.complex).unwrap();
    }

    #[test]
    fn zero_divisor_is_stuck() {
        let c = two_cells(GroupData::cyclic(2), &[(1, 0), (1, 1)], 2);
        let out = cancel_gap(&c, 2, 2, &SearchLimits::default()).unwrap();
        assert!(!out.success);
        assert_eq!(out.remaining, vec![(2, 1)]);
        assert!(out.reason.unwrap().contains("not silent"));
        out.certificate.verify(&out.source, &out.complex).unwrap();
    }

    #[test]
    fn tampered_certificates_fail() {
        let c = two_cells(GroupData::cyclic(3), &[(1, 2)], 3);
        let out = cancel_gap(&c, 3, 3, &SearchLimits::default()).unwrap();
        let mut bad = out.certificate.clone();
        let i = bad.h.iter().position(|m| !m.is_zero()).unwrap();
        bad.h[i] = bad.h[i].neg();
        assert!(bad.verify(&out.source, &out.complex).is_err());
    }

    #[test]
    fn elimination_keeps_homology() {
        let g = Arc::new(GroupData::cyclic(2));
        let t = GroupRingElement::basis(1);
        let e = GroupRingMatrix::from_rows(vec![
            vec![GroupRingElement::one(), t.clone()],
            vec![GroupRingElement::zero(), GroupRingElement::zero()],
        ])
        .unwrap();
        let x = realize_finite(&RealizationInput::new(FreeChainComplex::point(g), e, 3, 4).unwrap()).unwrap();
        let out = cancel_greedy(&x, 3, 4).unwrap();
        out.certificate.verify(&out.source, &out.complex).unwrap();
        same_homology(&x, &out.complex);
        assert!(out.success);
    }

    #[test]
    fn witness_route_on_realizations() {
        let s3 = Arc::new(GroupData::symmetric3());
        let a = GroupRingElement::basis(1);
        // E = [[1, a], [0, 0]] is a non-diagonal idempotent with free image
        let e = GroupRingMatrix::from_rows(vec![
            vec![GroupRingElement::one(), a],
            vec![GroupRingElement::zero(), GroupRingElement::zero()],
        ])
        .unwrap();
        let x = realize_finite(&RealizationInput::new(FreeChainComplex::point(s3), e, 3, 4).unwrap()).unwrap();
        let out = cancel_with_witness(&x, 3, 4, &SearchLimits::default()).unwrap().unwrap();
        assert!(out.success);
        out.certificate.verify(&out.source, &out.complex).unwrap();
        same_homology(&x, &out.complex);
    }
}
