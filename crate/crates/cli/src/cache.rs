//! On-disk cache of computed checks, one JSON file per key.
//!
//! A key is the SHA-256 of the crate version, the unit name, its
//! parameters and the backend. An entry stores the finished checks,
//! timings included, so a warm run reproduces a cold one byte for byte.

use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::Check;

#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn key(unit: &str, params: &Value, backend: &str) -> String {
        let material = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "unit": unit,
            "params": params,
            "backend": backend,
        });
        hex::encode(Sha256::digest(material.to_string().as_bytes()))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// A missing or unreadable entry is a miss.
    pub fn load(&self, key: &str) -> Option<Vec<Check>> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, checks: &[Check]) -> Result<(), CliError> {
        let Some(path) = self.path(key) else {
            return Ok(());
        };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(checks)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_parameters_and_backends() {
        let a = Cache::key("u", &json!({ "l": 1 }), "exact");
        assert_eq!(a.len(), 64);
        assert_eq!(a, Cache::key("u", &json!({ "l": 1 }), "exact"));
        assert_ne!(a, Cache::key("u", &json!({ "l": 2 }), "exact"));
        assert_ne!(a, Cache::key("u", &json!({ "l": 1 }), "specialize(q0=7/5)"));
    }

    #[test]
    fn round_trip_and_disabled() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().join("c")));
        let checks = vec![Check {
            name: "n".into(),
            params: json!({}),
            expected: json!(1),
            computed: json!(1),
            pass: true,
            ms: 3,
        }];
        assert!(cache.load("k").is_none());
        cache.store("k", &checks).unwrap();
        assert_eq!(cache.load("k").unwrap(), checks);
        Cache::disabled().store("k", &checks).unwrap();
        assert!(Cache::disabled().load("k").is_none());
    }
}
