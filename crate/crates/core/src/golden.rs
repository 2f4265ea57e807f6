//! Frozen data tables shipped with the crate, with checksum verification.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("golden file {0} is missing")]
    Missing(String),
    #[error("checksum mismatch for {path}: expected {expected}, found {found}")]
    Checksum { path: String, expected: String, found: String },
    #[error("golden file {path} is not valid JSON: {message}")]
    Json { path: String, message: String },
    #[error("malformed checksum manifest line {0:?}")]
    Manifest(String),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

const MANIFEST: &str = include_str!("../data/SHA256SUMS");

const EMBEDDED: &[(&str, &str)] = &[
    ("algebras/o5-p3.json", include_str!("../data/algebras/o5-p3.json")),
    ("algebras/o51-p2.json", include_str!("../data/algebras/o51-p2.json")),
    ("cochains/o5-p3/alpha0.json", include_str!("../data/cochains/o5-p3/alpha0.json")),
    ("cochains/o5-p3/alpha3.json", include_str!("../data/cochains/o5-p3/alpha3.json")),
    ("cochains/o5-p3/alpha6.json", include_str!("../data/cochains/o5-p3/alpha6.json")),
    ("cochains/o5-p3/alpha_03.json", include_str!("../data/cochains/o5-p3/alpha_03.json")),
    ("cochains/o5-p3/alpha_06.json", include_str!("../data/cochains/o5-p3/alpha_06.json")),
    ("cochains/o5-p3/alpha_0m3.json", include_str!("../data/cochains/o5-p3/alpha_0m3.json")),
    ("cochains/o5-p3/alpha_0m6.json", include_str!("../data/cochains/o5-p3/alpha_0m6.json")),
    ("cochains/o5-p3/alpha_6m6.json", include_str!("../data/cochains/o5-p3/alpha_6m6.json")),
    ("cochains/o5-p3/alpha_m33.json", include_str!("../data/cochains/o5-p3/alpha_m33.json")),
    ("cochains/o5-p3/beta3.json", include_str!("../data/cochains/o5-p3/beta3.json")),
    ("cochains/o5-p3/beta6.json", include_str!("../data/cochains/o5-p3/beta6.json")),
    ("cochains/o5-p3/beta_30m3.json", include_str!("../data/cochains/o5-p3/beta_30m3.json")),
    ("cochains/o5-p3/beta_m606.json", include_str!("../data/cochains/o5-p3/beta_m606.json")),
    ("cochains/o5-p3/c0.json", include_str!("../data/cochains/o5-p3/c0.json")),
    ("cochains/o5-p3/c0_prop.json", include_str!("../data/cochains/o5-p3/c0_prop.json")),
    ("cochains/o5-p3/c3.json", include_str!("../data/cochains/o5-p3/c3.json")),
    ("cochains/o5-p3/c6.json", include_str!("../data/cochains/o5-p3/c6.json")),
    ("cochains/o5-p3/c_m3.json", include_str!("../data/cochains/o5-p3/c_m3.json")),
    ("cochains/o5-p3/c_m6.json", include_str!("../data/cochains/o5-p3/c_m6.json")),
    ("cochains/o5-p3/gamma.json", include_str!("../data/cochains/o5-p3/gamma.json")),
    ("cochains/o5-p3/theta.json", include_str!("../data/cochains/o5-p3/theta.json")),
    ("cochains/o51-p2/alpha_42.json", include_str!("../data/cochains/o51-p2/alpha_42.json")),
    ("cochains/o51-p2/alpha_4m2.json", include_str!("../data/cochains/o51-p2/alpha_4m2.json")),
    ("cochains/o51-p2/alpha_m22.json", include_str!("../data/cochains/o51-p2/alpha_m22.json")),
    ("cochains/o51-p2/alpha_m42.json", include_str!("../data/cochains/o51-p2/alpha_m42.json")),
    ("cochains/o51-p2/alpha_m4m2.json", include_str!("../data/cochains/o51-p2/alpha_m4m2.json")),
    ("cochains/o51-p2/beta_2m22.json", include_str!("../data/cochains/o51-p2/beta_2m22.json")),
    ("cochains/o51-p2/beta_4m22.json", include_str!("../data/cochains/o51-p2/beta_4m22.json")),
    ("cochains/o51-p2/beta_m2m22.json", include_str!("../data/cochains/o51-p2/beta_m2m22.json")),
    ("cochains/o51-p2/c2.json", include_str!("../data/cochains/o51-p2/c2.json")),
    ("cochains/o51-p2/c4.json", include_str!("../data/cochains/o51-p2/c4.json")),
    ("cochains/o51-p2/c_m2.json", include_str!("../data/cochains/o51-p2/c_m2.json")),
    ("cochains/o51-p2/c_m4.json", include_str!("../data/cochains/o51-p2/c_m4.json")),
    ("cochains/o51-p2/rho.json", include_str!("../data/cochains/o51-p2/rho.json")),
    ("families/prop1.json", include_str!("../data/families/prop1.json")),
    ("families/prop2.json", include_str!("../data/families/prop2.json")),
    ("families/thm1.json", include_str!("../data/families/thm1.json")),
    ("families/thm3.json", include_str!("../data/families/thm3.json")),
];

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_manifest(text: &str) -> Result<BTreeMap<String, String>, GoldenError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut parts = l.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some(h), Some(p), None) => Ok((p.to_string(), h.to_string())),
                _ => Err(GoldenError::Manifest(l.to_string())),
            }
        })
        .collect()
}

/// Golden files keyed by their relative path, e.g. `cochains/o5-p3/c0.json`.
#[derive(Clone, Debug)]
pub struct GoldenStore {
    manifest: BTreeMap<String, String>,
    files: BTreeMap<String, String>,
}

impl GoldenStore {
    /// The copy compiled into the library; checksums are verified on construction.
    pub fn embedded() -> Result<Self, GoldenError> {
        let store = GoldenStore {
            manifest: parse_manifest(MANIFEST)?,
            files: EMBEDDED.iter().map(|(p, c)| (p.to_string(), c.to_string())).collect(),
        };
        store.verify()?;
        Ok(store)
    }

    /// Loads every file named in `dir/SHA256SUMS` and verifies it.
    pub fn from_dir(dir: &Path) -> Result<Self, GoldenError> {
        let read = |rel: &str| {
            let path = dir.join(rel);
            std::fs::read_to_string(&path).map_err(|source| match source.kind() {
                std::io::ErrorKind::NotFound => GoldenError::Missing(path.display().to_string()),
                _ => GoldenError::Io { path: path.display().to_string(), source },
            })
        };
        let manifest = parse_manifest(&read("SHA256SUMS")?)?;
        let files = manifest
            .keys()
            .map(|p| Ok((p.clone(), read(p)?)))
            .collect::<Result<_, GoldenError>>()?;
        let store = GoldenStore { manifest, files };
        store.verify()?;
        Ok(store)
    }

    /// Uses `MODLIE_DATA` when set, the embedded copy otherwise.
    pub fn from_env() -> Result<Self, GoldenError> {
        match std::env::var_os("MODLIE_DATA") {
            Some(dir) => GoldenStore::from_dir(Path::new(&dir)),
            None => GoldenStore::embedded(),
        }
    }

    pub fn verify(&self) -> Result<(), GoldenError> {
        for (path, expected) in &self.manifest {
            let content = self.files.get(path).ok_or_else(|| GoldenError::Missing(path.clone()))?;
            let found = sha256_hex(content.as_bytes());
            if &found != expected {
                return Err(GoldenError::Checksum { path: path.clone(), expected: expected.clone(), found });
            }
        }
        Ok(())
    }

    pub fn paths(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    pub fn checksum(&self, path: &str) -> Option<&str> {
        self.manifest.get(path).map(String::as_str)
    }

    pub fn text(&self, path: &str) -> Result<&str, GoldenError> {
        self.files.get(path).map(String::as_str).ok_or_else(|| GoldenError::Missing(path.to_string()))
    }

    pub fn json(&self, path: &str) -> Result<Value, GoldenError> {
        serde_json::from_str(self.text(path)?)
            .map_err(|e| GoldenError::Json { path: path.to_string(), message: e.to_string() })
    }

    pub fn algebra_path(name: &str) -> String {
        format!("algebras/{name}.json")
    }

    pub fn cochain_path(algebra: &str, name: &str) -> String {
        format!("cochains/{algebra}/{name}.json")
    }

    pub fn family_path(name: &str) -> String {
        format!("families/{name}.json")
    }

    /// Names of the cochains stored for an algebra.
    pub fn cochain_names(&self, algebra: &str) -> Vec<String> {
        let prefix = format!("cochains/{algebra}/");
        self.files
            .keys()
            .filter_map(|p| p.strip_prefix(&prefix)?.strip_suffix(".json").map(String::from))
            .collect()
    }
}
