//! Registry and certificate files.
//!
//! A registry is a single JSON object listing dimensions with known
//! tilings for one shape. Certificates are JSON lines, one verified
//! splitting per line, splitters sorted.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::splitting::{Arms, Certificate, CertificateError};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}:{line}: {source}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        source: serde_json::Error,
    },
    #[error("{}:{line}: {source}", path.display())]
    Certificate {
        path: PathBuf,
        line: usize,
        source: CertificateError,
    },
    #[error("{}: {reason}", path.display())]
    Registry { path: PathBuf, reason: String },
}

/// Dimensions known to admit a lattice tiling for one shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub k_plus: u64,
    pub k_minus: u64,
    pub dimensions: Vec<u64>,
    #[serde(default)]
    pub source: String,
}

impl Registry {
    pub fn new(arms: Arms, mut dimensions: Vec<u64>, source: impl Into<String>) -> Self {
        dimensions.sort_unstable();
        dimensions.dedup();
        Self {
            k_plus: arms.k_plus,
            k_minus: arms.k_minus,
            dimensions,
            source: source.into(),
        }
    }

    pub fn arms(&self) -> Arms {
        Arms {
            k_plus: self.k_plus,
            k_minus: self.k_minus,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.dimensions.binary_search(&n).is_ok()
    }
}

pub fn load_registry(path: impl AsRef<Path>) -> Result<Registry, StoreError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| StoreError::Io {
        path: path.into(),
        source,
    })?;
    let mut registry: Registry = serde_json::from_str(&text).map_err(|source| StoreError::Parse {
        path: path.into(),
        line: source.line(),
        source,
    })?;
    let invalid = |reason: String| StoreError::Registry {
        path: path.into(),
        reason,
    };
    Arms::new(registry.k_plus, registry.k_minus).map_err(|e| invalid(e.to_string()))?;
    if registry.dimensions.contains(&0) {
        return Err(invalid("dimension 0 is not allowed".into()));
    }
    registry.dimensions.sort_unstable();
    if let Some(w) = registry.dimensions.windows(2).find(|w| w[0] == w[1]) {
        return Err(invalid(format!("dimension {} listed twice", w[0])));
    }
    Ok(registry)
}

/// Reads and verifies every certificate. The first one that fails to
/// verify is reported with its line number and defect.
pub fn load_certificates(path: impl AsRef<Path>) -> Result<Vec<Certificate>, StoreError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| StoreError::Io {
        path: path.into(),
        source,
    })?;
    parse_certificates(path, &text)
}

fn parse_certificates(path: &Path, text: &str) -> Result<Vec<Certificate>, StoreError> {
    let mut certificates = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cert: Certificate = serde_json::from_str(line).map_err(|source| StoreError::Parse {
            path: path.into(),
            line: i + 1,
            source,
        })?;
        cert.to_verified_splitting()
            .map_err(|source| StoreError::Certificate {
                path: path.into(),
                line: i + 1,
                source,
            })?;
        certificates.push(cert);
    }
    Ok(certificates)
}

/// Appends a certificate unless an identical one is already stored.
/// Returns whether a line was written.
pub fn store_certificate(path: impl AsRef<Path>, certificate: &Certificate) -> Result<bool, StoreError> {
    let path = path.as_ref();
    let io_err = |source| StoreError::Io {
        path: path.into(),
        source,
    };
    let splitting = certificate
        .to_verified_splitting()
        .map_err(|source| StoreError::Certificate {
            path: path.into(),
            line: 0,
            source,
        })?;
    let canonical = Certificate {
        splitters: splitting.splitters().to_vec(),
        ..certificate.clone()
    };

    let existing = match fs::read_to_string(path) {
        Ok(text) => parse_certificates(path, &text)?,
        Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(io_err(e)),
    };
    if existing.contains(&canonical) {
        return Ok(false);
    }

    let mut line = serde_json::to_string(&canonical).expect("certificates always serialize");
    line.push('\n');
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io_err)?;
    file.write_all(line.as_bytes()).map_err(io_err)?;
    Ok(true)
}
