//! Positivity configuration: the slope table and the nef bound.
//!
//! The file is UTF-8 JSON, for example
//!
//! ```json
//! { "nef_bound": "11", "slopes": { "24": "162/25", "4": "unknown" }, "g_max": 500, "d_max": 200 }
//! ```
//!
//! Genera missing from `slopes` fall back to the Brill–Noether slope
//! `6 + 12/(g+1)` when `g+1` is composite, and to unknown otherwise.

use std::collections::BTreeMap;
use std::path::Path;

use moriwaki_core::lcm::{brill_noether_slope, PositivityConfig};
use moriwaki_core::rat::{int, parse_rat};
use moriwaki_core::Rat;
use num_traits::Signed;
use serde::Deserialize;

use crate::error::CliError;
use crate::report::Provenance;

pub const DEFAULT_CONFIG_PATH: &str = "moriwaki.json";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlopeEntry {
    Known(Rat),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub nef_bound: Rat,
    pub slope_table: BTreeMap<u32, SlopeEntry>,
    pub g_max: u32,
    pub d_max: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self { nef_bound: int(11), slope_table: BTreeMap::new(), g_max: 500, d_max: 200 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    nef_bound: Option<String>,
    #[serde(default)]
    slopes: BTreeMap<String, String>,
    g_max: Option<u32>,
    d_max: Option<u64>,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("config: {e}")))?;
        let mut cfg = Config::default();
        if let Some(n) = raw.nef_bound {
            cfg.nef_bound = parse_rat(&n).map_err(|e| CliError::Parse(format!("config nef_bound: {e}")))?;
        }
        if !cfg.nef_bound.is_positive() {
            return Err(CliError::Domain(format!("config nef_bound {} must be positive", cfg.nef_bound)));
        }
        for (g, s) in raw.slopes {
            let genus: u32 = g.parse().map_err(|_| CliError::Parse(format!("config: bad genus key `{g}`")))?;
            let entry = if s.trim() == "unknown" {
                SlopeEntry::Unknown
            } else {
                let r = parse_rat(&s).map_err(|e| CliError::Parse(format!("config slope for g={g}: {e}")))?;
                if !r.is_positive() {
                    return Err(CliError::Domain(format!("config slope for g={g} must be positive")));
                }
                SlopeEntry::Known(r)
            };
            cfg.slope_table.insert(genus, entry);
        }
        if let Some(g) = raw.g_max {
            cfg.g_max = g;
        }
        if let Some(d) = raw.d_max {
            cfg.d_max = d;
        }
        Ok(cfg)
    }

    /// Reads `path`, or the default path when `None`. A missing default file
    /// means built-in defaults; a missing explicit file is an error.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let (p, explicit) = match path {
            Some(p) => (p.to_path_buf(), true),
            None => (Path::new(DEFAULT_CONFIG_PATH).to_path_buf(), false),
        };
        match std::fs::read_to_string(&p) {
            Ok(text) => Self::from_json(&text),
            Err(e) if !explicit && e.kind() == std::io::ErrorKind::NotFound => Ok(Self::default()),
            Err(e) => Err(CliError::Parse(format!("cannot read config {}: {e}", p.display()))),
        }
    }

    /// The slope `s_g` and where it came from.
    pub fn slope(&self, g: u32) -> Option<(Rat, Provenance)> {
        match self.slope_table.get(&g) {
            Some(SlopeEntry::Known(s)) => Some((s.clone(), Provenance::Config)),
            Some(SlopeEntry::Unknown) => None,
            None => brill_noether_slope(g).map(|s| (s, Provenance::Derived)),
        }
    }

    pub fn positivity(&self, g: u32) -> PositivityConfig {
        PositivityConfig { nef_bound: self.nef_bound.clone(), slope: self.slope(g).map(|(s, _)| s) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use moriwaki_core::rat::frac;

    #[test]
    fn defaults() {
        let c = Config::default();
        assert_eq!(c.slope(24), Some((frac(162, 25), Provenance::Derived)));
        assert_eq!(c.slope(4), None);
        assert_eq!(c.nef_bound, int(11));
    }

    #[test]
    fn overrides() {
        let c = Config::from_json(r#"{"nef_bound": "12", "slopes": {"4": "13/2", "24": "unknown"}}"#).unwrap();
        assert_eq!(c.slope(4), Some((frac(13, 2), Provenance::Config)));
        assert_eq!(c.slope(24), None);
        assert_eq!(c.nef_bound, int(12));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(Config::from_json(r#"{"nef_bound": "0"}"#), Err(CliError::Domain(_))));
        assert!(matches!(Config::from_json(r#"{"slopes": {"x": "1"}}"#), Err(CliError::Parse(_))));
        assert!(matches!(Config::from_json(r#"{"slopes": {"5": "-1"}}"#), Err(CliError::Domain(_))));
        assert!(matches!(Config::from_json(r#"{"bogus": 1}"#), Err(CliError::Parse(_))));
    }
}
