//! Experiment grids, statistics, CSV persistence and the drift experiment.

mod csv_io;
mod drift;
mod presets;
mod stats;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::{BenchmarkKind, BenchmarkSpec};
use crate::error::{Error, Result};
use crate::model::CgaParams;
use crate::noise::NoiseSpec;
use crate::rng::{derive_seed, RandomSource, GENERATOR_NAME};
use crate::solvers::{
    parallel_run, run_cga, smart_restart, SmartRestartParams, DEFAULT_WRAPPER_EVAL_CAP,
};

pub use csv_io::{
    read_summary_csv, read_trials_csv, summary_from_reader, summary_to_writer, trials_from_reader,
    trials_to_writer, write_summary_csv, write_trials_csv, SUMMARY_HEADER, TRIAL_HEADER,
};
pub use drift::{drift_experiment, drift_hitting_time, DriftStats, NeutralFirstBit};
pub use presets::preset;
pub use stats::{quantile, summarize, SummaryRow, QUANTILE_METHOD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// The cGA with a fixed population size.
    Cga,
    /// Smart-restart cGA.
    Smart,
    /// Parallel-run cGA.
    Para,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cga => "cga",
            Algorithm::Smart => "smart",
            Algorithm::Para => "para",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cga" => Ok(Algorithm::Cga),
            "smart" => Ok(Algorithm::Smart),
            "para" => Ok(Algorithm::Para),
            other => Err(Error::param(
                "algorithm",
                format!("unknown algorithm `{other}`"),
            )),
        }
    }
}

/// A smart-restart budget factor: a literal value or `auto`, meaning `0.5 / ln n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BudgetFactorRepr", into = "BudgetFactorRepr")]
pub enum BudgetFactor {
    Value(f64),
    Auto,
}

impl BudgetFactor {
    pub fn resolve(self, n: usize) -> f64 {
        match self {
            BudgetFactor::Value(b) => b,
            BudgetFactor::Auto => 0.5 / (n as f64).ln(),
        }
    }
}

impl FromStr for BudgetFactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(BudgetFactor::Auto);
        }
        s.parse::<f64>()
            .map(BudgetFactor::Value)
            .map_err(|_| Error::param("b", format!("expected a number or `auto`, got `{s}`")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BudgetFactorRepr {
    Value(f64),
    Named(String),
}

impl TryFrom<BudgetFactorRepr> for BudgetFactor {
    type Error = Error;

    fn try_from(r: BudgetFactorRepr) -> Result<Self> {
        match r {
            BudgetFactorRepr::Value(v) => Ok(BudgetFactor::Value(v)),
            BudgetFactorRepr::Named(s) => s.parse(),
        }
    }
}

impl From<BudgetFactor> for BudgetFactorRepr {
    fn from(b: BudgetFactor) -> Self {
        match b {
            BudgetFactor::Value(v) => BudgetFactorRepr::Value(v),
            BudgetFactor::Auto => BudgetFactorRepr::Named("auto".into()),
        }
    }
}

fn default_update_factor() -> f64 {
    2.0
}

/// One experiment: a benchmark, an algorithm and the grid of its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub benchmark: BenchmarkSpec,
    pub algorithm: Algorithm,
    pub sigma2_list: Vec<f64>,
    /// Population sizes, for `cga` only.
    #[serde(default)]
    pub mu_list: Vec<f64>,
    /// Budget factors, for `smart` only.
    #[serde(default)]
    pub b_list: Vec<BudgetFactor>,
    #[serde(default = "default_update_factor")]
    pub update_factor: f64,
    pub trials: u32,
    pub master_seed: u64,
    /// Evaluation cap per trial; `None` picks the algorithm's default.
    #[serde(default)]
    pub eval_cap: Option<u64>,
}

/// One point of the parameter grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub sigma2: f64,
    pub mu: Option<f64>,
    pub b: Option<f64>,
    pub update_factor: Option<f64>,
}

impl ExperimentConfig {
    /// The evaluation cap each trial runs under: the configured one, or
    /// twice the benchmark's generation cap for the fixed-size cGA, or
    /// [`DEFAULT_WRAPPER_EVAL_CAP`] for the wrappers.
    pub fn effective_eval_cap(&self) -> u64 {
        self.eval_cap.unwrap_or_else(|| match self.algorithm {
            Algorithm::Cga => 2 * self.benchmark.default_generation_cap(),
            Algorithm::Smart | Algorithm::Para => DEFAULT_WRAPPER_EVAL_CAP,
        })
    }

    pub fn validate(&self) -> Result<()> {
        // Re-run the constructor checks in case the benchmark came from a file.
        let b = &self.benchmark;
        BenchmarkSpec::new(b.kind(), b.n(), b.k())?;
        if self.trials == 0 {
            return Err(Error::param("trials", "must be at least 1"));
        }
        if self.sigma2_list.is_empty() {
            return Err(Error::param(
                "sigma2",
                "at least one noise variance is required",
            ));
        }
        for &s in &self.sigma2_list {
            NoiseSpec::new(s)?;
        }
        if self.effective_eval_cap() < 2 {
            return Err(Error::param(
                "eval_cap",
                "must allow at least one generation (2 evaluations)",
            ));
        }
        match self.algorithm {
            Algorithm::Cga => {
                if self.mu_list.is_empty() {
                    return Err(Error::param(
                        "mu",
                        "the fixed-size cGA needs at least one mu",
                    ));
                }
                for &mu in &self.mu_list {
                    CgaParams::new(b.n(), mu)?;
                }
            }
            Algorithm::Smart => {
                if self.b_list.is_empty() {
                    return Err(Error::param(
                        "b",
                        "smart-restart needs at least one budget factor",
                    ));
                }
                for bf in &self.b_list {
                    SmartRestartParams::new(self.update_factor, bf.resolve(b.n()))?;
                }
            }
            Algorithm::Para => {}
        }
        Ok(())
    }

    /// Grid points in execution order: noise variance outer, algorithm parameter inner.
    pub fn grid(&self) -> Vec<GridPoint> {
        let n = self.benchmark.n();
        let mut points = Vec::new();
        for &sigma2 in &self.sigma2_list {
            match self.algorithm {
                Algorithm::Cga => points.extend(self.mu_list.iter().map(|&mu| GridPoint {
                    sigma2,
                    mu: Some(mu),
                    b: None,
                    update_factor: None,
                })),
                Algorithm::Smart => points.extend(self.b_list.iter().map(|bf| GridPoint {
                    sigma2,
                    mu: None,
                    b: Some(bf.resolve(n)),
                    update_factor: Some(self.update_factor),
                })),
                Algorithm::Para => points.push(GridPoint {
                    sigma2,
                    mu: None,
                    b: None,
                    update_factor: None,
                }),
            }
        }
        points
    }
}

/// Outcome of one trial, one row of the trial CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub benchmark: BenchmarkKind,
    pub n: usize,
    pub k: Option<usize>,
    pub sigma2: f64,
    pub algorithm: Algorithm,
    pub mu: Option<f64>,
    pub b: Option<f64>,
    #[serde(rename = "U")]
    pub update_factor: Option<f64>,
    pub trial: u32,
    pub seed: u64,
    /// Evaluations until the optimum was sampled; the cap for unsuccessful trials.
    pub evaluations: u64,
    pub success: bool,
}

/// Seed of trial `trial` at grid point `grid_index`.
pub fn trial_seed(master_seed: u64, grid_index: usize, trial: u32) -> u64 {
    derive_seed(derive_seed(master_seed, grid_index as u64), trial as u64)
}

fn run_trial(
    config: &ExperimentConfig,
    point: &GridPoint,
    seed: u64,
    cap: u64,
) -> Result<(bool, u64)> {
    let bench = &config.benchmark;
    let noise = NoiseSpec::new(point.sigma2)?;
    let (success, used) = match config.algorithm {
        Algorithm::Cga => {
            let params = CgaParams::new(bench.n(), point.mu.expect("cga grid point has mu"))?;
            let out = run_cga(params, bench, noise, cap / 2, RandomSource::new(seed))?;
            (out.success, out.evaluations)
        }
        Algorithm::Smart => {
            let params = SmartRestartParams::new(
                point.update_factor.expect("smart grid point has U"),
                point.b.expect("smart grid point has b"),
            )?
            .with_eval_cap(Some(cap));
            let out = smart_restart(&params, bench, noise, seed)?;
            (out.success, out.total_evaluations)
        }
        Algorithm::Para => {
            let out = parallel_run(bench, noise, seed, Some(cap))?;
            (out.success, out.total_evaluations)
        }
    };
    Ok((success, if success { used } else { cap }))
}

/// Run every trial of the grid. Trials run on the rayon pool; the result is
/// ordered by grid index, then trial index, and depends only on `config`.
pub fn run_grid(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    let cap = config.effective_eval_cap();
    let grid = config.grid();
    let jobs: Vec<(usize, u32)> = (0..grid.len())
        .flat_map(|g| (0..config.trials).map(move |t| (g, t)))
        .collect();
    jobs.par_iter()
        .map(|&(g, trial)| {
            let point = &grid[g];
            let seed = trial_seed(config.master_seed, g, trial);
            let (success, evaluations) = run_trial(config, point, seed, cap)?;
            Ok(TrialRecord {
                benchmark: config.benchmark.kind(),
                n: config.benchmark.n(),
                k: config.benchmark.k(),
                sigma2: point.sigma2,
                algorithm: config.algorithm,
                mu: point.mu,
                b: point.b,
                update_factor: point.update_factor,
                trial,
                seed,
                evaluations,
                success,
            })
        })
        .collect()
}

/// Provenance written next to result files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub generator: String,
    pub quantile_method: String,
    pub configs: Vec<ExperimentConfig>,
}

impl RunMetadata {
    pub fn new(configs: Vec<ExperimentConfig>) -> Self {
        Self {
            generator: GENERATOR_NAME.to_string(),
            quantile_method: QUANTILE_METHOD.to_string(),
            configs,
        }
    }
}
