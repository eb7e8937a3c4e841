//! Literature values of `K̃₀(ℤG)` with the duality involution, keyed by
//! structural group name. Nothing here is computed.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::tate::InvolutedAbelianGroup;
use crate::error::{malformed, Result};
use crate::group::GroupData;
use crate::integer::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Presentation {
    pub generators: usize,
    /// Each relation is a row of length `generators`.
    #[serde(default, with = "crate::integer::json::vec_vec")]
    pub relations: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub group: String,
    pub k0_tilde: K0Presentation,
    #[serde(default, with = "crate::integer::json::vec_vec")]
    pub involution: Vec<Vec<BigInt>>,
    pub source: String,
}

impl RegistryEntry {
    fn known_zero(name: &str, source: &str) -> Self {
        RegistryEntry {
            group: name.into(),
            k0_tilde: K0Presentation {
                generators: 0,
                relations: Vec::new(),
            },
            involution: Vec::new(),
            source: source.into(),
        }
    }

    pub fn involuted_group(&self) -> Result<InvolutedAbelianGroup> {
        let n = self.k0_tilde.generators;
        let mut rel = IntMatrix::zeros(n, self.k0_tilde.relations.len());
        for (j, r) in self.k0_tilde.relations.iter().enumerate() {
            if r.len() != n {
                return Err(malformed(format!("relation {j} must have {n} entries")));
            }
            for (i, x) in r.iter().enumerate() {
                rel[(i, j)] = x.clone();
            }
        }
        let sigma = if self.involution.is_empty() && n == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            if self.involution.len() != n || self.involution.iter().any(|r| r.len() != n) {
                return Err(malformed(format!("involution must be {n}x{n}")));
            }
            IntMatrix::from_rows(&self.involution)
        };
        InvolutedAbelianGroup::new(n, rel, sigma)
    }

    pub fn is_zero(&self) -> bool {
        self.involuted_group().map(|a| a.underlying().is_zero()).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub entries: Vec<RegistryEntry>,
}

const PRIMES: [usize; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Registry {
    /// Trivial group, `C_p` for `p ≤ 19`, `S3`, and `C2^3`.
    pub fn builtin() -> Self {
        let mut entries = vec![RegistryEntry::known_zero("trivial", "K̃₀(ℤ) = 0 (ℤ is a PID)")];
        for p in PRIMES {
            entries.push(RegistryEntry::known_zero(
                &format!("C{p}"),
                "Rim: K̃₀(ℤC_p) ≅ class group of ℤ[ζ_p], trivial for p ≤ 19; external data, not computed",
            ));
        }
        entries.push(RegistryEntry::known_zero(
            "S3",
            "K̃₀(ℤS₃) = 0 (Reiner–Ullom); external data, not computed",
        ));
        entries.push(RegistryEntry {
            group: "C2^3".into(),
            k0_tilde: K0Presentation {
                generators: 1,
                relations: vec![vec![BigInt::from(2)]],
            },
            involution: vec![vec![BigInt::from(1)]],
            source: "K̃₀(ℤ[(ℤ₂)³]) ≅ ℤ₂ with trivial involution; external data, not computed".into(),
        });
        Registry { entries }
    }

    pub fn empty() -> Self {
        Registry { entries: Vec::new() }
    }

    /// Entries of `other` replace same-named entries here.
    pub fn merged(mut self, other: Registry) -> Self {
        for e in other.entries {
            self.entries.retain(|x| x.group != e.group);
            self.entries.push(e);
        }
        self
    }

    pub fn lookup(&self, group: &GroupData) -> Option<&RegistryEntry> {
        let name = group.recognized_name()?;
        self.entries.iter().find(|e| e.group == name)
    }

    pub fn is_known_zero(&self, group: &GroupData) -> bool {
        self.lookup(group).is_some_and(RegistryEntry::is_zero)
    }
}
