//! Run manifests: everything needed to rerun a command and check that it
//! reproduces the same bytes.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Subcommand name, e.g. `sim-normal`.
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Fully resolved configuration, defaults and flag overrides included.
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
    pub version: String,
    /// SHA-256 of every input file, keyed by path as given.
    #[serde(default)]
    pub inputs: BTreeMap<String, String>,
    /// SHA-256 of every output file, keyed by file name.
    pub outputs: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: &str, config: &impl Serialize) -> Result<Self, CliError> {
        Ok(RunManifest {
            command: command.to_string(),
            mode: None,
            config: serde_json::to_value(config)
                .map_err(|e| CliError::Validation(format!("cannot record configuration: {e}")))?,
            master_seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("manifest serializes");
        bytes.push(b'\n');
        bytes
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let path = dir.join(MANIFEST_FILE);
        std::fs::write(&path, self.to_bytes()).map_err(|e| CliError::io(&path, e))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_slice(&bytes).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    /// Deserialize the recorded configuration.
    pub fn config_as<T: for<'de> Deserialize<'de>>(&self) -> Result<T, CliError> {
        serde_json::from_value(self.config.clone())
            .map_err(|e| CliError::Validation(format!("manifest configuration: {e}")))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn json_round_trip() {
        let mut m = RunManifest::new("entropy", &serde_json::json!({"a": 1})).unwrap();
        m.master_seed = Some(u64::MAX);
        m.outputs.insert("x.csv".into(), sha256_hex(b"x"));
        let back: RunManifest = serde_json::from_slice(&m.to_bytes()).unwrap();
        assert_eq!(back, m);
    }
}
