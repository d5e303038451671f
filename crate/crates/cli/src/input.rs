use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use lipcert::io::from_document;
use lipcert::NormKind;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use sha2::{Digest, Sha256};

/// Reads input documents and records the SHA-256 of every file read.
#[derive(Debug, Default)]
pub struct Inputs {
    pub digests: BTreeMap<String, String>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.digests.insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    pub fn load<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let text = self.read(path)?;
        from_document(&text).with_context(|| format!("schema error in {}", path.display()))
    }
}

/// Distance matrix as written, before any axiom is checked.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpace {
    pub points: usize,
    pub dist: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RawPhi {
    Power { alpha: f64 },
    Log1p,
    Pwl { breakpoints: Vec<(f64, f64)> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFamily {
    pub domain: RawSpace,
    pub norm: NormKind,
    pub base: usize,
    pub members: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    pub phi: Option<RawPhi>,
}

/// Parses `a-b` into a pair.
pub fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once('-').with_context(|| format!("pair `{s}` is not of the form a-b"))?;
    Ok((a.trim().parse().context("pair index")?, b.trim().parse().context("pair index")?))
}
