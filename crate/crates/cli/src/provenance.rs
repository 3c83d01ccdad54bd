//! Sidecar written next to every reduced instance, naming the reduction and
//! pinning the exact source bytes it was built from.

use std::path::{Path, PathBuf};

use mecsr_core::reductions::{Params, ReductionKind};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::formats::{parse, read_text, to_canonical};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub reduction: String,
    pub source: String,
    pub source_sha256: String,
    pub k: Option<usize>,
    pub force: bool,
}

impl Provenance {
    pub fn new(kind: ReductionKind, source: &Path, source_bytes: &[u8], params: Params) -> Self {
        Provenance {
            reduction: kind.name().to_string(),
            source: source.display().to_string(),
            source_sha256: sha256_hex(source_bytes),
            k: params.k,
            force: params.force,
        }
    }

    pub fn kind(&self) -> Result<ReductionKind, CliError> {
        Ok(self.reduction.parse()?)
    }

    pub fn params(&self) -> Params {
        Params {
            k: self.k,
            force: self.force,
        }
    }

    pub fn to_json(&self) -> String {
        to_canonical(self)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `<instance>.provenance.json`
pub fn sidecar_path(instance: &Path) -> PathBuf {
    let mut name = instance.as_os_str().to_owned();
    name.push(".provenance.json");
    PathBuf::from(name)
}

pub fn read_sidecar(instance: &Path) -> Result<Provenance, CliError> {
    let path = sidecar_path(instance);
    if !path.exists() {
        return Err(CliError::usage(format!(
            "missing provenance sidecar {}",
            path.display()
        )));
    }
    parse(&read_text(&path)?, &path.display().to_string())
}
