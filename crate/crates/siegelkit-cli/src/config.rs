//! Run configuration: defaults, an optional JSON file, the environment and
//! command-line flags, applied in that order.

use std::path::Path;

use serde::{Deserialize, Serialize};
use siegelkit::Policy;

/// Overrides the precision cap (in bits).
pub const PRECISION_CAP_ENV: &str = "SIEGELKIT_PRECISION_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub precision_bits_start: u32,
    pub precision_bits_cap: u32,
    pub search_box_cap: u64,
    pub memory_cap_bytes: u64,
    pub output: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits_start: 128,
            precision_bits_cap: 1 << 16,
            search_box_cap: siegelkit::diophantine::DEFAULT_BOX_CAP,
            memory_cap_bytes: 1 << 32,
            output: OutputFormat::Json,
            seed: 20_240_601,
        }
    }
}

/// Flag values; `None` leaves the configured value alone.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub precision_bits_start: Option<u32>,
    pub precision_bits_cap: Option<u32>,
    pub search_box_cap: Option<u64>,
    pub memory_cap_bytes: Option<u64>,
    pub output: Option<OutputFormat>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {e}"))
    }

    pub fn load(path: &Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
        RunConfig::from_json(&text)
    }

    /// Layers the environment and the flags over `self`, then validates.
    pub fn resolve(mut self, env_cap: Option<&str>, o: &Overrides) -> Result<RunConfig, String> {
        if let Some(s) = env_cap {
            self.precision_bits_cap = s.trim().parse().map_err(|_| format!("{PRECISION_CAP_ENV}: not an integer: {s:?}"))?;
        }
        if let Some(v) = o.precision_bits_start {
            self.precision_bits_start = v;
        }
        if let Some(v) = o.precision_bits_cap {
            self.precision_bits_cap = v;
        }
        if let Some(v) = o.search_box_cap {
            self.search_box_cap = v;
        }
        if let Some(v) = o.memory_cap_bytes {
            self.memory_cap_bytes = v;
        }
        if let Some(v) = o.output {
            self.output = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.precision_bits_start == 0 || self.precision_bits_cap == 0 {
            return Err("precision bits must be positive".into());
        }
        if self.precision_bits_start > self.precision_bits_cap {
            return Err(format!(
                "precision start {} exceeds the cap {}",
                self.precision_bits_start, self.precision_bits_cap
            ));
        }
        if self.search_box_cap == 0 || self.memory_cap_bytes == 0 {
            return Err("caps must be positive".into());
        }
        Ok(())
    }

    pub fn policy(&self) -> Policy {
        Policy::new(self.precision_bits_start, self.precision_bits_cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layering_order() {
        let base = RunConfig::from_json(r#"{"precision_bits_cap": 4096, "seed": 5}"#).unwrap();
        assert_eq!(base.precision_bits_start, 128);
        let o = Overrides { seed: Some(9), ..Overrides::default() };
        let c = base.clone().resolve(Some("8192"), &o).unwrap();
        assert_eq!((c.precision_bits_cap, c.seed), (8192, 9));
        let o = Overrides { precision_bits_cap: Some(256), ..Overrides::default() };
        assert_eq!(base.resolve(Some("8192"), &o).unwrap().precision_bits_cap, 256);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::from_json(r#"{"bogus": 1}"#).is_err());
        let o = Overrides { precision_bits_start: Some(512), precision_bits_cap: Some(256), ..Overrides::default() };
        assert!(RunConfig::default().resolve(None, &o).is_err());
        assert!(RunConfig::default().resolve(Some("lots"), &Overrides::default()).is_err());
    }
}
