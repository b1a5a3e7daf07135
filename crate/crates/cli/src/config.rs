//! Campaign configuration: CLI flags merged over an optional JSON config
//! file, flags winning.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use nineteen_vertex_core::scalar::parse_rational;
use nineteen_vertex_core::{Couplings, Rat};

/// Environment variable naming the default report output directory.
pub const OUT_DIR_ENV: &str = "NINETEEN_VERTEX_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Spectral,
    Threefold,
    K3,
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Chart::Spectral => "spectral",
            Chart::Threefold => "threefold",
            Chart::K3 => "k3",
        })
    }
}

/// Fully resolved campaign settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig {
    /// Free couplings `(Λ1+, Λ2+)` as `p/q` strings.
    pub couplings: [String; 2],
    pub chart: Chart,
    pub backend: Backend,
    pub samples: u32,
    pub seed: u64,
    /// Numerator/denominator bound for sampled rationals.
    pub bound: u32,
    /// Absolute tolerance for float residual verdicts (scaled by the
    /// operand norms where a check documents it).
    pub tolerance: f64,
    pub exact_max_sites: usize,
    pub float_max_sites: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            couplings: ["1".into(), "2".into()],
            chart: Chart::Spectral,
            backend: Backend::Exact,
            samples: 50,
            seed: 7,
            bound: 20,
            tolerance: 1e-10,
            exact_max_sites: 5,
            float_max_sites: 8,
            output: None,
        }
    }
}

/// Partial configuration as read from a JSON file; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub couplings: Option<[String; 2]>,
    pub chart: Option<Chart>,
    pub backend: Option<Backend>,
    pub samples: Option<u32>,
    pub seed: Option<u64>,
    pub bound: Option<u32>,
    pub tolerance: Option<f64>,
    pub exact_max_sites: Option<usize>,
    pub float_max_sites: Option<usize>,
    pub output: Option<PathBuf>,
}

pub fn load_file_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

impl CampaignConfig {
    /// Applies file-config defaults underneath explicitly set flags.
    pub fn with_file_defaults(mut self, file: FileConfig, explicit: &ExplicitFlags) -> Self {
        macro_rules! take {
            ($field:ident, $flag:ident) => {
                if !explicit.$flag {
                    if let Some(v) = file.$field {
                        self.$field = v;
                    }
                }
            };
        }
        take!(couplings, couplings);
        take!(chart, chart);
        take!(backend, backend);
        take!(samples, samples);
        take!(seed, seed);
        take!(bound, bound);
        take!(tolerance, tolerance);
        take!(exact_max_sites, exact_max_sites);
        take!(float_max_sites, float_max_sites);
        if self.output.is_none() {
            self.output = file.output;
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.samples == 0 {
            problems.push("samples must be >= 1".to_string());
        }
        if self.bound == 0 {
            problems.push("bound must be >= 1".to_string());
        }
        if self.tolerance.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            problems.push("tolerance must be positive".to_string());
        }
        for (i, c) in self.couplings.iter().enumerate() {
            match parse_rational(c) {
                Ok(v) if !num_traits::Zero::is_zero(&v) => {}
                Ok(_) => problems.push(format!("coupling {} must be nonzero", i + 1)),
                Err(e) => problems.push(format!("coupling {}: {e}", i + 1)),
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            bail!("invalid configuration: {}", problems.join("; "))
        }
    }

    pub fn rational_couplings(&self) -> Result<(Rat, Rat)> {
        Ok((
            parse_rational(&self.couplings[0])?,
            parse_rational(&self.couplings[1])?,
        ))
    }

    pub fn exact_couplings(&self) -> Result<Couplings<Rat>> {
        let (l1, l2) = self.rational_couplings()?;
        Ok(Couplings::derive(l1, l2)?)
    }
}

/// Which flags the user passed explicitly (so file values don't override).
#[derive(Debug, Default, Clone)]
pub struct ExplicitFlags {
    pub couplings: bool,
    pub chart: bool,
    pub backend: bool,
    pub samples: bool,
    pub seed: bool,
    pub bound: bool,
    pub tolerance: bool,
    pub exact_max_sites: bool,
    pub float_max_sites: bool,
}
