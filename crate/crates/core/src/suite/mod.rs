//! Experiment suites: JSON configs, a registry of experiment kinds, and the
//! CSV/JSON output of a run.
//!
//! A config names a list of experiments, each with a `kind` from the
//! [`ExperimentRegistry`] and kind-specific `params`. Unknown keys are
//! rejected everywhere. A run writes one CSV per experiment and a
//! `summary.json`; CSV bytes depend only on the config and the seed.

mod catalog;
mod experiments;
pub mod spec;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::Error;

pub use catalog::{builtin, catalog, CatalogEntry};
pub use experiments::{
    AcConverge, Equipartition, Forms, GlConverge, Identities, Poincare, Profile, Tensors, Volume,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Top-level config file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub schema_version: u32,
    pub name: String,
    pub description: String,
    /// Which result the suite exercises, for the catalog.
    #[serde(default)]
    pub result: Option<String>,
    /// Seed for randomized experiments; the command line may override it.
    #[serde(default)]
    pub seed: Option<u64>,
    pub experiments: Vec<ExperimentSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    pub kind: String,
    #[serde(default)]
    pub params: serde_json::Value,
}

/// Errors of a suite run, split by the exit status they map to.
#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    /// Malformed or unsatisfiable config (exit status 2).
    #[error("config error: {0}")]
    Config(String),
    /// An experiment failed numerically (exit status 1).
    #[error("experiment `{experiment}` failed: {source}")]
    Numerical { experiment: String, source: Error },
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl SuiteError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SuiteError::Config(_) => 2,
            _ => 1,
        }
    }

    /// Errors that say the config asks for something impossible are config
    /// errors, whatever stage detects them.
    fn from_experiment(experiment: &str, e: Error) -> Self {
        match e {
            Error::EpsilonTooLarge { .. }
            | Error::TubeTooNarrow { .. }
            | Error::UnsupportedBoundary(_)
            | Error::DimensionMismatch(_)
            | Error::InvalidArgument(_) => SuiteError::Config(format!("experiment `{experiment}`: {e}")),
            source => SuiteError::Numerical {
                experiment: experiment.to_string(),
                source,
            },
        }
    }
}

/// One CSV row. `epsilon` is empty for rows that are not part of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub series: String,
    pub epsilon: Option<f64>,
    pub value: f64,
    pub target: f64,
    pub gap: f64,
    pub residual_1: f64,
    pub residual_2: f64,
}

/// A single pass/fail comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    /// `true` for `value ≤ limit`, `false` for `value ≥ limit`.
    pub upper: bool,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            upper: true,
            pass: value <= limit,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            upper: false,
            pass: value >= limit,
        }
    }
}

/// What an experiment hands back to the runner.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    /// Headline gap and rate for the summary.
    pub gap: Option<f64>,
    pub rate: Option<f64>,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Per-run inputs shared by all experiments.
#[derive(Clone, Copy, Debug)]
pub struct RunContext {
    pub seed: u64,
    /// Position in the suite, mixed into the seed.
    pub index: usize,
}

impl RunContext {
    pub fn rng(&self) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(self.index as u64))
    }
}

/// An experiment kind.
pub trait Experiment: Send + Sync {
    fn kind(&self) -> &'static str;
    /// One line for `list-experiments`.
    fn describe(&self) -> &'static str;
    /// Parse and build everything the run needs without computing anything
    /// expensive, so config mistakes surface before any experiment runs.
    fn validate(&self, params: &serde_json::Value) -> crate::Result<()>;
    fn run(&self, params: &serde_json::Value, ctx: &RunContext) -> crate::Result<Outcome>;
}

pub struct ExperimentRegistry {
    kinds: BTreeMap<&'static str, Box<dyn Experiment>>,
}

impl Default for ExperimentRegistry {
    fn default() -> Self {
        let all: Vec<Box<dyn Experiment>> = vec![
            Box::new(Identities),
            Box::new(AcConverge),
            Box::new(GlConverge),
            Box::new(Tensors),
            Box::new(Equipartition),
            Box::new(Volume),
            Box::new(Poincare),
            Box::new(Forms),
            Box::new(Profile),
        ];
        let mut kinds = BTreeMap::new();
        for e in all {
            kinds.insert(e.kind(), e);
        }
        Self { kinds }
    }
}

impl ExperimentRegistry {
    pub fn kinds(&self) -> impl Iterator<Item = &dyn Experiment> {
        self.kinds.values().map(|b| b.as_ref())
    }

    pub fn get(&self, kind: &str) -> Option<&dyn Experiment> {
        self.kinds.get(kind).map(|b| b.as_ref())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentSummary {
    pub name: String,
    pub kind: String,
    pub pass: bool,
    pub gap: Option<f64>,
    pub rate: Option<f64>,
    pub runtime_seconds: f64,
    pub csv: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub experiments: Vec<ExperimentSummary>,
}

impl SuiteSummary {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Parse a config, rejecting unknown keys and other schema versions.
pub fn parse_config(text: &str) -> Result<SuiteConfig, SuiteError> {
    let cfg: SuiteConfig = serde_json::from_str(text).map_err(|e| SuiteError::Config(e.to_string()))?;
    if cfg.schema_version != SCHEMA_VERSION {
        return Err(SuiteError::Config(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            cfg.schema_version
        )));
    }
    if cfg.experiments.is_empty() {
        return Err(SuiteError::Config("config lists no experiments".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for e in &cfg.experiments {
        if e.name.is_empty() || !e.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(SuiteError::Config(format!(
                "experiment name `{}` must be non-empty and use only [A-Za-z0-9_-]",
                e.name
            )));
        }
        if !seen.insert(e.name.as_str()) {
            return Err(SuiteError::Config(format!("duplicate experiment name `{}`", e.name)));
        }
    }
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<SuiteConfig, SuiteError> {
    let text = fs::read_to_string(path).map_err(|e| SuiteError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Check every experiment's kind and params.
pub fn validate(cfg: &SuiteConfig, registry: &ExperimentRegistry) -> Result<(), SuiteError> {
    for e in &cfg.experiments {
        let kind = registry.get(&e.kind).ok_or_else(|| {
            let known: Vec<&str> = registry.kinds().map(|k| k.kind()).collect();
            SuiteError::Config(format!(
                "experiment `{}`: unknown kind `{}` (known: {})",
                e.name,
                e.kind,
                known.join(", ")
            ))
        })?;
        kind.validate(&e.params).map_err(|err| SuiteError::Config(format!("experiment `{}`: {err}", e.name)))?;
    }
    Ok(())
}

/// Run every experiment in order, writing `<name>.csv` and `summary.json`
/// into `out_dir`. `seed` overrides the config's seed.
pub fn run_suite(cfg: &SuiteConfig, out_dir: &Path, seed: Option<u64>) -> Result<SuiteSummary, SuiteError> {
    let registry = ExperimentRegistry::default();
    validate(cfg, &registry)?;
    fs::create_dir_all(out_dir).map_err(|source| SuiteError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let seed = seed.or(cfg.seed).unwrap_or(0);
    let mut experiments = Vec::with_capacity(cfg.experiments.len());
    for (index, spec) in cfg.experiments.iter().enumerate() {
        let kind = registry.get(&spec.kind).expect("validated");
        let start = Instant::now();
        let outcome = kind
            .run(&spec.params, &RunContext { seed, index })
            .map_err(|e| SuiteError::from_experiment(&spec.name, e))?;
        let runtime_seconds = start.elapsed().as_secs_f64();
        let csv_name = format!("{}.csv", spec.name);
        write_atomic(&out_dir.join(&csv_name), csv_bytes(&outcome.rows).as_bytes())?;
        experiments.push(ExperimentSummary {
            name: spec.name.clone(),
            kind: spec.kind.clone(),
            pass: outcome.pass(),
            gap: outcome.gap,
            rate: outcome.rate,
            runtime_seconds,
            csv: csv_name,
            checks: outcome.checks,
        });
    }
    let summary = SuiteSummary {
        schema_version: SCHEMA_VERSION,
        suite: cfg.name.clone(),
        seed,
        pass: experiments.iter().all(|e| e.pass),
        experiments,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    write_atomic(&out_dir.join("summary.json"), json.as_bytes())?;
    Ok(summary)
}

pub const CSV_HEADER: &str = "series,epsilon,value,target,gap,residual_1,residual_2";

/// Fixed-format CSV: every float with 17 significant digits.
pub fn csv_bytes(rows: &[Row]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    let f = |v: f64| format!("{v:.17e}");
    for r in rows {
        let series = if r.series.contains([',', '"']) {
            format!("\"{}\"", r.series.replace('"', "\"\""))
        } else {
            r.series.clone()
        };
        let eps = r.epsilon.map(f).unwrap_or_default();
        out.push_str(&format!(
            "{series},{eps},{},{},{},{},{}\n",
            f(r.value),
            f(r.target),
            f(r.gap),
            f(r.residual_1),
            f(r.residual_2)
        ));
    }
    out
}

/// Write through a temporary file in the same directory, then rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), SuiteError> {
    let io = |source| SuiteError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}
