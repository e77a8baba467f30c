//! Config file handling: one TOML file, every section and field optional,
//! flags override file values. The fully resolved config is hashed into the
//! metadata header of every output so results can be traced to settings.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use laar_core::dataio::Metadata;
use laar_core::{AnchorLayout, Error, EvalConfig, NmsConfig, NmsMode, Result, SimConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CompareConfig {
    /// Suppression modes evaluated side by side; the first baseline entry
    /// anchors the delta column.
    pub modes: Vec<NmsMode>,
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig {
            modes: vec![NmsMode::Baseline, NmsMode::Laar, NmsMode::LaarCluster],
        }
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub layout: AnchorLayout,
    pub simulation: SimConfig,
    pub nms: NmsConfig,
    pub eval: EvalConfig,
    pub compare: CompareConfig,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<RunConfig> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
    }

    /// Hex SHA-256 of the resolved config's canonical JSON form. Field and
    /// map order are fixed, so equal settings hash equally.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Metadata block for output files; `seed` is set only by commands that
    /// actually consume the random stream.
    pub fn metadata(&self, seeded: bool) -> Metadata {
        Metadata {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: self.hash(),
            seed: seeded.then_some(self.simulation.seed),
        }
    }
}
