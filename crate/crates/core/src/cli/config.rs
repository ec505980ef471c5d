//! Run configuration: command-line flags layered over an optional TOML
//! file layered over built-in defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::search::{PruningPolicy, SearchOptions};

use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Both,
}

/// Every setting a config file may provide. All fields are optional; the
/// same names are used as long flags (with `-` for `_`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub policy: Option<String>,
    pub policies: Option<Vec<String>>,
    #[serde(rename = "R")]
    pub r: Option<u8>,
    pub depth: Option<Vec<u32>>,
    pub nodes: Option<u64>,
    pub time_ms: Option<u64>,
    pub tt_bytes: Option<usize>,
    pub suite: Option<PathBuf>,
    pub baseline: Option<String>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub killers: Option<bool>,
    pub check_extension: Option<bool>,
    pub pst: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub count_only: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }

    /// Fills every unset field of `self` from `lower`.
    pub fn or(self, lower: FileConfig) -> FileConfig {
        FileConfig {
            policy: self.policy.or(lower.policy),
            policies: self.policies.or(lower.policies),
            r: self.r.or(lower.r),
            depth: self.depth.or(lower.depth),
            nodes: self.nodes.or(lower.nodes),
            time_ms: self.time_ms.or(lower.time_ms),
            tt_bytes: self.tt_bytes.or(lower.tt_bytes),
            suite: self.suite.or(lower.suite),
            baseline: self.baseline.or(lower.baseline),
            format: self.format.or(lower.format),
            jobs: self.jobs.or(lower.jobs),
            killers: self.killers.or(lower.killers),
            check_extension: self.check_extension.or(lower.check_extension),
            pst: self.pst.or(lower.pst),
            out: self.out.or(lower.out),
            count_only: self.count_only.or(lower.count_only),
        }
    }

    pub fn search_options(&self) -> SearchOptions {
        let defaults = SearchOptions::default();
        SearchOptions {
            tt_bytes: self.tt_bytes.unwrap_or(defaults.tt_bytes),
            killers: self.killers.unwrap_or(defaults.killers),
            check_extension: self.check_extension.unwrap_or(defaults.check_extension),
        }
    }
}

/// Resolves a policy name such as `std`, `std:2` or `vrfd3`. A bare family
/// name takes `r` when given, otherwise its default R.
pub fn resolve_policy(spec: &str, r: Option<u8>) -> Result<PruningPolicy, CliError> {
    let spec = spec.trim();
    let explicit = spec.contains(':') || (spec.ends_with(|c: char| c.is_ascii_digit()) && !spec.starts_with("var-"));
    let parsed = if explicit || r.is_none() {
        spec.parse::<PruningPolicy>()
    } else {
        PruningPolicy::from_parts(spec, r)
    };
    parsed.map_err(|e| CliError::Input(e.to_string()))
}
