//! Finite groups given by a multiplication table, with an orientation
//! character `ω: G → {±1}`. Element `0` is always the identity.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{malformed, Result};

/// Largest group order accepted from input; the table check is cubic in it.
pub const MAX_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    name: String,
    elements: Vec<String>,
    table: Vec<usize>,
    omega: Vec<i8>,
    inverse: Vec<usize>,
}

impl GroupData {
    /// Validates the table exhaustively: closure, identity at index 0,
    /// inverses, associativity, and that `omega` is a homomorphism.
    pub fn from_table(
        name: impl Into<String>,
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        omega: Vec<i8>,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(malformed("a group needs at least one element"));
        }
        if n > MAX_ORDER {
            return Err(malformed(format!("group order {n} exceeds the limit {MAX_ORDER}")));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(malformed(format!("multiplication table must be {n}x{n}")));
        }
        if omega.len() != n {
            return Err(malformed(format!("omega must have {n} entries")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= n) {
            return Err(malformed(format!("table entry {bad} is out of range")));
        }
        for g in 0..n {
            if flat[g] != g || flat[g * n] != g {
                return Err(malformed("element 0 is not a two-sided identity"));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            let inv = (0..n).find(|&h| flat[g * n + h] == 0 && flat[h * n + g] == 0);
            match inv {
                Some(h) => inverse[g] = h,
                None => return Err(malformed(format!("element {g} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(malformed(format!(
                            "multiplication is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        if omega.iter().any(|&w| w != 1 && w != -1) {
            return Err(malformed("omega values must be +1 or -1"));
        }
        for a in 0..n {
            for b in 0..n {
                if omega[flat[a * n + b]] != omega[a] * omega[b] {
                    return Err(malformed(format!(
                        "omega is not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        Ok(GroupData {
            name: name.into(),
            elements,
            table: flat,
            omega,
            inverse,
        })
    }

    /// Closes a set of permutations under composition. Elements are listed in
    /// breadth-first order from the identity, multiplying by generators on the right.
    /// `omega` is either one value per generator or one value per element of the
    /// closure (in that breadth-first order).
    pub fn from_permutations(
        name: impl Into<String>,
        generators: &[Vec<usize>],
        omega: Option<&[i8]>,
    ) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        for p in generators {
            if p.len() != degree {
                return Err(malformed("permutation generators act on different sets"));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(malformed("generator is not a permutation"));
                }
            }
        }
        if omega.is_some_and(|w| w.iter().any(|&s| s != 1 && s != -1)) {
            return Err(malformed("omega values must be 1 or -1"));
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut perms = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        // word sign along the BFS tree, for per-generator omega
        let mut word_sign: Vec<i8> = vec![1];
        let per_gen = omega.filter(|w| w.len() == generators.len() && w.len() != 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let next = compose(&perms[i], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), perms.len());
                    let s = per_gen.map_or(1, |w| w[gi]);
                    word_sign.push(word_sign[i] * s);
                    queue.push_back(perms.len());
                    perms.push(next);
                }
            }
            if perms.len() > MAX_ORDER {
                return Err(malformed("permutation group is too large"));
            }
        }
        let n = perms.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = index[&compose(&perms[a], &perms[b])];
            }
        }
        let omega = match omega {
            None => vec![1; n],
            Some(w) if w.len() == n => w.to_vec(),
            Some(w) if w.len() == generators.len() => word_sign,
            Some(w) => {
                return Err(malformed(format!(
                    "omega has {} entries; expected {} (per generator) or {n} (per element)",
                    w.len(),
                    generators.len()
                )))
            }
        };
        let elements = (0..n).map(|i| if i == 0 { "e".into() } else { format!("g{i}") }).collect();
        Self::from_table(name, elements, table, omega)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n = ⟨t⟩` with elements `t^0, …, t^{n−1}` in that order.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let elements = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        let name = if n == 1 { "trivial".into() } else { format!("C{n}") };
        Self::from_table(name, elements, table, vec![1; n]).expect("cyclic table is valid")
    }

    /// The symmetric group on three letters, generated by a 3-cycle and a transposition.
    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", &[vec![1, 2, 0], vec![1, 0, 2]], None)
            .expect("S3 generators are valid")
    }

    /// `(C₂)^k`; element `i` is the bit vector of `i`.
    pub fn elementary_abelian_2(k: u32) -> Self {
        let n = 1usize << k;
        let table = (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect();
        let elements = (0..n).map(|i| format!("{i:0width$b}", width = k as usize)).collect();
        Self::from_table(format!("C2^{k}"), elements, table, vec![1; n])
            .expect("xor table is valid")
    }

    /// Same group with a different orientation character.
    pub fn with_omega(&self, omega: Vec<i8>) -> Result<Self> {
        let n = self.order();
        let table = (0..n).map(|a| self.table[a * n..(a + 1) * n].to_vec()).collect();
        Self::from_table(self.name.clone(), self.elements.clone(), table, omega)
    }

    /// `G × H` with element `(g, h)` at index `g·|H| + h` and `ω = ω_G·ω_H`.
    pub fn direct_product(&self, other: &GroupData) -> GroupData {
        let (n, m) = (self.order(), other.order());
        let idx = |g: usize, h: usize| g * m + h;
        let mut table = vec![vec![0; n * m]; n * m];
        for g1 in 0..n {
            for h1 in 0..m {
                for g2 in 0..n {
                    for h2 in 0..m {
                        table[idx(g1, h1)][idx(g2, h2)] = idx(self.mul(g1, g2), other.mul(h1, h2));
                    }
                }
            }
        }
        let mut elements = Vec::with_capacity(n * m);
        let mut omega = Vec::with_capacity(n * m);
        for g in 0..n {
            for h in 0..m {
                elements.push(format!("({},{})", self.elements[g], other.elements[h]));
                omega.push(self.omega[g] * other.omega[h]);
            }
        }
        let name = match (self.order(), other.order()) {
            (1, _) => other.name.clone(),
            (_, 1) => self.name.clone(),
            _ => format!("{}x{}", self.name, other.name),
        };
        Self::from_table(name, elements, table, omega).expect("product of valid groups")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn omega(&self, a: usize) -> i8 {
        self.omega[a]
    }

    pub fn omega_values(&self) -> &[i8] {
        &self.omega
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    /// Same table and orientation character (names are ignored).
    pub fn same_structure(&self, other: &GroupData) -> bool {
        self.table == other.table && self.omega == other.omega
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators_of(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &g in subgroup {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    pub fn generators(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.generators_of(&all)
    }

    pub fn prime_divisors(&self) -> Vec<usize> {
        let mut n = self.order();
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// One Sylow `p`-subgroup, found by adjoining `p`-elements while the
    /// generated subgroup stays a `p`-group. A non-maximal `p`-subgroup always
    /// has such an extension inside its normaliser, so this terminates at a Sylow subgroup.
    pub fn sylow_subgroup(&self, p: usize) -> Vec<usize> {
        let is_p_power = |mut m: usize| {
            while m % p == 0 {
                m /= p;
            }
            m == 1
        };
        let mut full = self.order();
        let mut target = 1;
        while full % p == 0 {
            full /= p;
            target *= p;
        }
        let mut gens: Vec<usize> = Vec::new();
        let mut current = vec![0usize];
        while current.len() < target {
            let mut grew = false;
            for g in 0..self.order() {
                if current.binary_search(&g).is_ok() || !is_p_power(self.element_order(g)) {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(g);
                let closure = self.subgroup_closure(&trial);
                if is_p_power(closure.len()) {
                    gens = trial;
                    current = closure;
                    grew = true;
                    break;
                }
            }
            assert!(grew, "Sylow search stalled");
        }
        current
    }

    /// All homomorphisms `G → {±1}`, trivial one first.
    pub fn sign_characters(&self) -> Vec<Vec<i8>> {
        let gens = self.generators();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << gens.len().min(16)) {
            let vals: Vec<i8> = (0..gens.len())
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            // propagate along words; reject on conflict
            let mut chi = vec![0i8; self.order()];
            chi[0] = 1;
            let mut queue = VecDeque::from([0usize]);
            let mut ok = true;
            while let Some(x) = queue.pop_front() {
                for (gi, &g) in gens.iter().enumerate() {
                    let y = self.mul(x, g);
                    let v = chi[x] * vals[gi];
                    if chi[y] == 0 {
                        chi[y] = v;
                        queue.push_back(y);
                    } else if chi[y] != v {
                        ok = false;
                    }
                }
            }
            if ok {
                out.push(chi);
            }
        }
        out
    }

    /// Left cosets `gH` of a subgroup, each as a sorted element list, ordered by
    /// smallest member.
    pub fn left_cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| self.mul(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            out.push(coset);
        }
        out
    }

    /// A structural name used to look groups up in the known-K̃₀ registry:
    /// `trivial`, `C{n}`, `S3`, or `C2^{k}`; `None` otherwise.
    pub fn recognized_name(&self) -> Option<String> {
        let n = self.order();
        if n == 1 {
            return Some("trivial".into());
        }
        if (0..n).any(|g| self.element_order(g) == n) {
            return Some(format!("C{n}"));
        }
        if n == 6 && !self.is_abelian() {
            return Some("S3".into());
        }
        if n.is_power_of_two() && (1..n).all(|g| self.element_order(g) == 2) {
            return Some(format!("C2^{}", n.trailing_zeros()));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = GroupData::cyclic(3);
        assert_eq!(g.mul(1, 2), 0);
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.recognized_name().as_deref(), Some("C3"));
        assert_eq!(g.sign_characters().len(), 1);
        assert_eq!(GroupData::cyclic(4).sign_characters().len(), 2);
    }

    #[test]
    fn s3_from_permutations() {
        let g = GroupData::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.recognized_name().as_deref(), Some("S3"));
        assert_eq!(g.sylow_subgroup(2).len(), 2);
        assert_eq!(g.sylow_subgroup(3).len(), 3);
        assert_eq!(g.sign_characters().len(), 2);
        let h = g.sylow_subgroup(2);
        assert_eq!(g.left_cosets(&h).len(), 3);
    }

    #[test]
    fn per_generator_omega() {
        let g = GroupData::from_permutations("S3", &[vec![1, 2, 0], vec![1, 0, 2]], Some(&[1, -1]))
            .unwrap();
        // sign of the permutation
        let negatives = (0..6).filter(|&x| g.omega(x) == -1).count();
        assert_eq!(negatives, 3);
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = GroupData::from_table("x", vec!["e".into(), "a".into()], vec![vec![0, 1], vec![1, 1]], vec![1, 1]);
        assert!(bad.is_err());
        let bad_omega = GroupData::from_table(
            "C3",
            vec!["e".into(), "t".into(), "t2".into()],
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            vec![1, -1, -1],
        );
        assert!(bad_omega.is_err());
        assert!(GroupData::from_permutations("C2", &[vec![1, 0]], Some(&[100])).is_err());
    }

    #[test]
    fn products_and_names() {
        let k = GroupData::elementary_abelian_2(3);
        assert_eq!(k.recognized_name().as_deref(), Some("C2^3"));
        let p = GroupData::cyclic(2).direct_product(&GroupData::cyclic(3));
        assert_eq!(p.recognized_name().as_deref(), Some("C6"));
        assert_eq!(GroupData::cyclic(2).direct_product(&GroupData::cyclic(2)).recognized_name().as_deref(), Some("C2^2"));
        assert_eq!(k.sylow_subgroup(2).len(), 8);
        assert_eq!(k.generators().len(), 3);
    }
}
