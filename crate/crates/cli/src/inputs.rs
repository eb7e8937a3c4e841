//! Reading input files while recording their content hashes.

use std::cell::RefCell;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use cellgap::complex::{FreeChainComplex, Subcomplex};
use cellgap::config::Config;
use cellgap::format;
use cellgap::group::GroupData;
use cellgap::kzero::registry::Registry;
use cellgap::kzero::KZeroRep;
use cellgap::ring::GroupRingMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CONFIG_ENV: &str = "CELLGAP_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHash {
    pub role: String,
    /// The path as given on the command line (or the group name it resolved).
    pub path: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Loads inputs and remembers what was read, in order.
#[derive(Default)]
pub struct Inputs {
    seen: RefCell<Vec<InputHash>>,
}

impl Inputs {
    pub fn hashes(self) -> Vec<InputHash> {
        self.seen.into_inner()
    }

    pub fn text(&self, role: &str, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.seen.borrow_mut().push(InputHash {
            role: role.to_string(),
            path: path.display().to_string(),
            sha256: sha256_hex(text.as_bytes()),
        });
        Ok(text)
    }

    /// Built-in group names first, then group files relative to `base`.
    fn resolve_group(&self, base: &Path, name: &str) -> cellgap::Result<GroupData> {
        if let Some(g) = format::builtin_group(name) {
            return Ok(g);
        }
        let path = base.join(name);
        let text = self
            .text("group", &path)
            .map_err(|e| cellgap::Error::Malformed(format!("group {name:?}: {e:#}")))?;
        format::read_group(&text)
    }

    fn parse<T>(&self, role: &str, path: &Path, read: impl Fn(&str, &dyn Fn(&str) -> cellgap::Result<GroupData>) -> cellgap::Result<T>) -> Result<T> {
        let text = self.text(role, path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
        read(&text, &|name| self.resolve_group(&base, name)).with_context(|| format!("in {}", path.display()))
    }

    pub fn complex(&self, role: &str, path: &Path) -> Result<FreeChainComplex> {
        self.parse(role, path, |t, r| format::read_complex(t, r))
    }

    pub fn matrix(&self, role: &str, path: &Path) -> Result<(Arc<GroupData>, GroupRingMatrix)> {
        self.parse(role, path, |t, r| format::read_matrix(t, r))
    }

    pub fn class(&self, role: &str, path: &Path) -> Result<KZeroRep> {
        self.parse(role, path, |t, r| format::read_class(t, r))
    }

    pub fn subcomplex(&self, path: &Path) -> Result<Subcomplex> {
        let text = self.text("subcomplex", path)?;
        format::read_subcomplex(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn registry(&self, path: &Path) -> Result<Registry> {
        let text = self.text("registry", path)?;
        format::read_registry(&text).with_context(|| format!("in {}", path.display()))
    }

    /// `--config`, else `$CELLGAP_CONFIG`, else the defaults.
    pub fn config(&self, flag: Option<&Path>) -> Result<Config> {
        let path = match flag {
            Some(p) => p.to_path_buf(),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => PathBuf::from(p),
                _ => return Ok(Config::default()),
            },
        };
        let text = self.text("config", &path)?;
        let config: Config = serde_json::from_str(&text).with_context(|| format!("in {}", path.display()))?;
        for e in &config.registry {
            e.involuted_group().with_context(|| format!("registry entry {:?} in {}", e.group, path.display()))?;
        }
        Ok(config)
    }
}
