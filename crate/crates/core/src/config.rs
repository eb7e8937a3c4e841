//! Numeric limits for the bounded searches, and the known-K̃₀ registry.

use serde::{Deserialize, Serialize};

use crate::kzero::registry::{Registry, RegistryEntry};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchLimits {
    /// Coefficients `a, b` in candidate combinations `a·u + b·v` lie in `[−box, box]`.
    pub coefficient_box: i64,
    /// Largest free summand `ℤG^s` added when looking for a basis.
    pub max_stabilization: usize,
    /// Cap on the candidate list of one basis search.
    pub max_candidates: usize,
    /// Number of rotated candidate orders tried by the greedy basis search.
    pub max_restarts: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            coefficient_box: 4,
            max_stabilization: 2,
            max_candidates: 2000,
            max_restarts: 16,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub search: SearchLimits,
    /// Extra registry entries; same-named built-in entries are replaced.
    pub registry: Vec<RegistryEntry>,
    /// Record wall-clock timings in reports (off by default so reports are reproducible).
    pub timing: bool,
}

impl Config {
    pub fn registry(&self) -> Registry {
        Registry::builtin().merged(Registry {
            entries: self.registry.clone(),
        })
    }
}
