//! Command line flags merged over an optional flat JSON config file.

use std::path::{Path, PathBuf};

use bellqfi::sweep::{Model, SweepConfig};
use bellqfi::UConvention;
use clap::{Args, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Ising,
    Twomode,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Ising => Model::Ising,
            ModelArg::Twomode => Model::TwoMode,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConventionArg {
    /// H = −J_x + (u/N) J_z², transition near u = −1 for every N
    PerAtom,
    /// H = −J_x + u J_z²
    Raw,
}

impl From<ConventionArg> for UConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::PerAtom => UConvention::PerAtom,
            ConventionArg::Raw => UConvention::Raw,
        }
    }
}

/// Flags shared by `sweep` and `derivative`. Every field is optional so that a config
/// file can fill the gaps.
#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    /// Atom or qubit number; repeat for several
    #[arg(long = "n", value_name = "N")]
    pub n: Vec<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub u_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub u_max: Option<f64>,
    /// Grid points including both ends
    #[arg(long)]
    pub steps: Option<usize>,
    /// Output CSV; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: one per core)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Accepted for config symmetry; sweeps involve no randomness
    #[arg(long)]
    pub seed: Option<u64>,
    /// Truncate the correlator-sum bound at this order
    #[arg(long)]
    pub correlator_bound_cap: Option<usize>,
    #[arg(long, value_enum)]
    pub u_convention: Option<ConventionArg>,
    /// Flat JSON object with the same keys (underscores for dashes)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    model: Option<ModelArg>,
    n: Option<OneOrMany>,
    u_min: Option<f64>,
    u_max: Option<f64>,
    steps: Option<usize>,
    out: Option<PathBuf>,
    threads: Option<usize>,
    // accepted like the flag, nothing in a sweep is random
    #[allow(dead_code)]
    seed: Option<u64>,
    correlator_bound_cap: Option<usize>,
    u_convention: Option<ConventionArg>,
}

#[derive(Debug)]
pub enum ConfigError {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, serde_json::Error),
    Invalid(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Io(p, e) => write!(f, "cannot read config {}: {e}", p.display()),
            ConfigError::Parse(p, e) => write!(f, "bad config {}: {e}", p.display()),
            ConfigError::Invalid(msg) => f.write_str(msg),
        }
    }
}

/// Everything a sweep run needs once flags and file are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub sweep: SweepConfig,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

fn load(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_owned(), e))?;
    serde_json::from_str(&text).map_err(|e| ConfigError::Parse(path.to_owned(), e))
}

impl SweepArgs {
    /// Flags win over the file; the model falls back to `default_model`.
    pub fn resolve(&self, default_model: Model) -> Result<Resolved, ConfigError> {
        let file = match &self.config {
            Some(p) => load(p)?,
            None => FileConfig::default(),
        };
        let model = self.model.or(file.model).map(Model::from).unwrap_or(default_model);
        let n_list = if !self.n.is_empty() {
            self.n.clone()
        } else {
            match file.n {
                Some(OneOrMany::One(n)) => vec![n],
                Some(OneOrMany::Many(v)) => v,
                None => return Err(ConfigError::Invalid("no system size given (use --n)".into())),
            }
        };
        let mut sweep = SweepConfig::new(model, n_list);
        if let Some(x) = self.u_min.or(file.u_min) {
            sweep.u_min = x;
        }
        if let Some(x) = self.u_max.or(file.u_max) {
            sweep.u_max = x;
        }
        if let Some(x) = self.steps.or(file.steps) {
            sweep.steps = x;
        }
        sweep.correlator_bound_cap = self.correlator_bound_cap.or(file.correlator_bound_cap);
        if let Some(c) = self.u_convention.or(file.u_convention) {
            sweep.convention = c.into();
        }
        sweep.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let threads = self.threads.or(file.threads);
        if threads == Some(0) {
            return Err(ConfigError::Invalid("--threads must be at least 1".into()));
        }
        Ok(Resolved {
            sweep,
            out: self.out.clone().or(file.out),
            threads,
        })
    }
}
