use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Ordinates γ₁ < γ₂ < … of nontrivial zeta zeros, ρ_n = ½ + iγ_n.
///
/// Tables are taken to start at the first zero, so counting functions only
/// check coverage at the upper end. Indices are 0-based; index `i` holds
/// γ_{i+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source_path: Option<PathBuf>,
    digest: String,
}

impl ZeroTable {
    /// Reads a table file: one ordinate per line, ascending, `#` comments
    /// and blank lines ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path)?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|e| Error::Parse { line: 0, message: format!("not UTF-8: {e}") })?;
        let ordinates = parse_ordinates(&text)?;
        Ok(Self { ordinates, source_path: Some(path.to_path_buf()), digest: sha256_hex(&bytes) })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let ordinates = parse_ordinates(text)?;
        Ok(Self { ordinates, source_path: None, digest: sha256_hex(text.as_bytes()) })
    }

    /// In-memory table; the digest covers the canonical text rendering.
    pub fn from_ordinates(ordinates: Vec<f64>) -> Result<Self> {
        validate(&ordinates, |i| i + 1)?;
        let mut canon = String::with_capacity(ordinates.len() * 20);
        for g in &ordinates {
            canon.push_str(&format!("{g:?}\n"));
        }
        let digest = sha256_hex(canon.as_bytes());
        Ok(Self { ordinates, source_path: None, digest })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.ordinates.get(index).copied()
    }

    pub fn first(&self) -> f64 {
        self.ordinates[0]
    }

    pub fn last(&self) -> f64 {
        self.ordinates[self.ordinates.len() - 1]
    }

    pub fn source_path(&self) -> Option<&Path> {
        self.source_path.as_deref()
    }

    /// SHA-256 of the file bytes (hex).
    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Fails with a coverage error unless the table reaches `t`.
    pub fn require_upto(&self, t: f64) -> Result<()> {
        if t > self.last() {
            Err(Error::Coverage { needed: t, available: self.last() })
        } else {
            Ok(())
        }
    }

    /// Ordinates in the closed interval [lo, hi], as an index range.
    pub fn index_range(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let a = self.ordinates.partition_point(|&g| g < lo);
        let b = self.ordinates.partition_point(|&g| g <= hi);
        a..b.max(a)
    }
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_ordinates(text: &str) -> Result<Vec<f64>> {
    let mut ordinates = Vec::new();
    let mut line_numbers = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line
            .parse()
            .map_err(|_| Error::Parse { line: i + 1, message: format!("not a number: '{line}'") })?;
        ordinates.push(value);
        line_numbers.push(i + 1);
    }
    validate(&ordinates, |k| line_numbers[k])?;
    Ok(ordinates)
}

fn validate(ordinates: &[f64], line_of: impl Fn(usize) -> usize) -> Result<()> {
    if ordinates.is_empty() {
        return Err(Error::Parse { line: 0, message: "table has no ordinates".into() });
    }
    for (k, &g) in ordinates.iter().enumerate() {
        if !g.is_finite() || g <= 1.0 {
            return Err(Error::Parse { line: line_of(k), message: format!("ordinate {g} must be finite and > 1") });
        }
        if k > 0 && g <= ordinates[k - 1] {
            return Err(Error::Parse {
                line: line_of(k),
                message: format!("ordinate {g} does not exceed previous {}", ordinates[k - 1]),
            });
        }
    }
    Ok(())
}
