//! Run manifest: per-stage cache keys, seeds and content hashes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub key: String,
    pub seed: u64,
    pub config: Value,
    /// Input role → sha256.
    pub inputs: BTreeMap<String, String>,
    /// Path relative to the output directory → sha256.
    pub outputs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub seed: u64,
    pub stages: BTreeMap<String, StageRecord>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(sha256_hex(&bytes))
}

/// First eight bytes (little-endian) of `sha256("<stage>:<seed>")`.
pub fn stage_seed(seed: u64, stage: &str) -> u64 {
    let digest = Sha256::digest(format!("{stage}:{seed}").as_bytes());
    let mut b = [0u8; 8];
    b.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(b)
}

/// Hash over everything that determines a stage's outputs.
pub fn stage_key(stage: &str, seed: u64, config: &Value, inputs: &BTreeMap<String, String>) -> String {
    let doc = serde_json::json!({
        "version": MANIFEST_VERSION,
        "stage": stage,
        "seed": seed,
        "config": config,
        "inputs": inputs,
    });
    sha256_hex(doc.to_string().as_bytes())
}

impl Manifest {
    pub fn new(seed: u64) -> Self {
        Self {
            version: MANIFEST_VERSION,
            seed,
            stages: BTreeMap::new(),
        }
    }

    /// Reads `out/manifest.json`; a missing or unreadable file starts afresh.
    pub fn load(out: &Path, seed: u64) -> Self {
        let path = out.join(MANIFEST_FILE);
        let Ok(text) = fs::read_to_string(&path) else {
            return Self::new(seed);
        };
        match serde_json::from_str::<Manifest>(&text) {
            Ok(mut m) if m.version == MANIFEST_VERSION => {
                m.seed = seed;
                m
            }
            _ => {
                log::warn!("{}: unreadable manifest, ignoring cached results", path.display());
                Self::new(seed)
            }
        }
    }

    pub fn save(&self, out: &Path) -> Result<(), CliError> {
        let path = out.join(MANIFEST_FILE);
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::io(path, e))
    }

    /// True when `stage` was last run with `key` and its outputs are intact.
    pub fn is_fresh(&self, out: &Path, stage: &str, key: &str) -> bool {
        let Some(rec) = self.stages.get(stage) else {
            return false;
        };
        rec.key == key
            && rec
                .outputs
                .iter()
                .all(|(rel, hash)| sha256_file(&out.join(rel)).is_ok_and(|h| &h == hash))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_seed_matches_digest_prefix() {
        let d = Sha256::digest(b"embed:7");
        let expect = u64::from_le_bytes(d[..8].try_into().unwrap());
        assert_eq!(stage_seed(7, "embed"), expect);
        assert_ne!(stage_seed(7, "embed"), stage_seed(7, "cloud"));
        assert_ne!(stage_seed(7, "embed"), stage_seed(8, "embed"));
    }

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn key_depends_on_every_part() {
        let cfg = serde_json::json!({"k": 3});
        let mut inputs = BTreeMap::new();
        inputs.insert("ideas".to_string(), "aa".to_string());
        let base = stage_key("cloud", 1, &cfg, &inputs);
        assert_eq!(base, stage_key("cloud", 1, &cfg, &inputs));
        assert_ne!(base, stage_key("cloud", 2, &cfg, &inputs));
        assert_ne!(base, stage_key("cloud", 1, &serde_json::json!({"k": 4}), &inputs));
        inputs.insert("ideas".to_string(), "ab".to_string());
        assert_ne!(base, stage_key("cloud", 1, &cfg, &inputs));
    }

    #[test]
    fn freshness_checks_output_hashes() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.txt"), "hello").unwrap();
        let mut m = Manifest::new(0);
        let mut outputs = BTreeMap::new();
        outputs.insert("a.txt".to_string(), sha256_hex(b"hello"));
        m.stages.insert(
            "s".into(),
            StageRecord {
                key: "k".into(),
                seed: 0,
                config: Value::Null,
                inputs: BTreeMap::new(),
                outputs,
            },
        );
        assert!(m.is_fresh(dir.path(), "s", "k"));
        assert!(!m.is_fresh(dir.path(), "s", "other"));
        fs::write(dir.path().join("a.txt"), "changed").unwrap();
        assert!(!m.is_fresh(dir.path(), "s", "k"));
        m.save(dir.path()).unwrap();
        assert_eq!(Manifest::load(dir.path(), 0), m);
    }
}
