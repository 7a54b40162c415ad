use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;

use smartcga::harness::{
    drift_experiment, preset, read_trials_csv, run_grid, summarize, write_summary_csv,
    write_trials_csv, Algorithm, BudgetFactor, ExperimentConfig, RunMetadata,
};
use smartcga::theory::{
    expected_cost_bound, expected_cost_bound_corrected, first_good_round, max_branches,
    montecarlo_restart_cost, schedule, AssumptionL, CostConvention, ScheduleEntry,
};
use smartcga::{BenchmarkKind, BenchmarkSpec, RandomSource};

#[derive(Parser)]
#[command(
    name = "smartcga",
    version,
    about = "Compact genetic algorithm experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute an experiment grid and write one CSV row per trial.
    Run(RunArgs),
    /// Turn a trial CSV into per-grid-point medians and quartiles.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hitting time of a neutral frequency at the margins.
    Drift(DriftArgs),
    /// Evaluate the restart-cost bound and the idealized restart process.
    Bound(BoundArgs),
    /// Print a standard experiment setup as JSON: 1 OneMax, 2 LeadingOnes, 3 Jump, 4 DLB.
    Preset {
        figure: u8,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON file holding one config or a list of configs; replaces the grid flags.
    #[arg(long, conflicts_with_all = ["benchmark", "algorithm"])]
    config: Option<PathBuf>,
    #[arg(long, required_unless_present = "config")]
    benchmark: Option<BenchmarkKind>,
    #[arg(long, required_unless_present = "config")]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "0")]
    sigma2: Vec<f64>,
    #[arg(long, required_unless_present = "config")]
    algorithm: Option<Algorithm>,
    #[arg(long)]
    mu: Vec<f64>,
    /// Budget factor; `auto` means 0.5 / ln n.
    #[arg(long)]
    b: Vec<BudgetFactor>,
    #[arg(long, default_value_t = 2.0)]
    update_factor: f64,
    #[arg(long, default_value_t = 20)]
    trials: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    eval_cap: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DriftArgs {
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_values_t = [16.0, 32.0, 64.0])]
    mu: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also write the full statistics, including every hitting time, as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Literal,
    Evaluations,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value_t = 2.0)]
    update_factor: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    mu_tilde: f64,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 2.0)]
    initial_mu: f64,
    /// Number of simulated restart processes; 0 skips the simulation.
    #[arg(long, default_value_t = 0)]
    mc_trials: u64,
    #[arg(long, value_enum, default_value_t = Convention::Literal)]
    convention: Convention,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of schedule rounds to list.
    #[arg(long, default_value_t = 0)]
    rounds: u32,
}

#[derive(Serialize)]
struct BoundReport {
    bound: f64,
    bound_corrected: f64,
    branch_mu_tilde: f64,
    branch_t: f64,
    first_good_round: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    monte_carlo: Option<smartcga::theory::MonteCarloEstimate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    schedule: Vec<ScheduleEntry>,
}

fn meta_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn load_configs(path: &Path) -> Result<Vec<ExperimentConfig>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let configs = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    Ok(configs)
}

fn configs_from_flags(args: &RunArgs) -> Result<Vec<ExperimentConfig>> {
    let (Some(kind), Some(n), Some(algorithm)) = (args.benchmark, args.n, args.algorithm) else {
        bail!("--benchmark, --n and --algorithm are required without --config");
    };
    Ok(vec![ExperimentConfig {
        benchmark: BenchmarkSpec::new(kind, n, args.k)?,
        algorithm,
        sigma2_list: args.sigma2.clone(),
        mu_list: args.mu.clone(),
        b_list: args.b.clone(),
        update_factor: args.update_factor,
        trials: args.trials,
        master_seed: args.seed,
        eval_cap: args.eval_cap,
    }])
}

fn run(args: RunArgs) -> Result<()> {
    let configs = match &args.config {
        Some(path) => load_configs(path)?,
        None => configs_from_flags(&args)?,
    };
    // Reject every config before running any of them.
    for c in &configs {
        c.validate()?;
    }
    let mut records = Vec::new();
    for c in &configs {
        info!(
            "{} / {}: {} grid points x {} trials",
            c.benchmark,
            c.algorithm,
            c.grid().len(),
            c.trials
        );
        records.extend(run_grid(c)?);
    }
    write_trials_csv(&args.out, &records)?;
    let meta = meta_path(&args.out);
    let json = serde_json::to_string_pretty(&RunMetadata::new(configs))?;
    fs::write(&meta, json + "\n").with_context(|| format!("writing {}", meta.display()))?;
    println!("wrote {} records to {}", records.len(), args.out.display());
    Ok(())
}

fn drift(args: DriftArgs) -> Result<()> {
    let stats = drift_experiment(args.n, &args.mu, args.trials, args.seed)?;
    println!("mu\ttrials\tcensored\tmean\tmedian\tmean/mu^2");
    for s in &stats {
        println!(
            "{}\t{}\t{}\t{:.2}\t{}\t{:.4}",
            s.mu, s.trials, s.censored, s.mean, s.median, s.ratio
        );
    }
    if let Some(out) = &args.out {
        fs::write(out, serde_json::to_string_pretty(&stats)? + "\n")
            .with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(())
}

fn bound(args: BoundArgs) -> Result<()> {
    let a = AssumptionL::new(args.mu_tilde, args.t, args.p)?;
    let (u, b) = (args.update_factor, args.b);
    let (branch_mu_tilde, branch_t) = max_branches(&a, b);
    let monte_carlo = if args.mc_trials > 0 {
        let convention = match args.convention {
            Convention::Literal => CostConvention::Literal,
            Convention::Evaluations => CostConvention::Evaluations,
        };
        let mut rng = RandomSource::new(args.seed);
        Some(montecarlo_restart_cost(
            &a,
            u,
            b,
            args.initial_mu,
            args.mc_trials,
            convention,
            &mut rng,
        )?)
    } else {
        None
    };
    let report = BoundReport {
        bound: expected_cost_bound(&a, u, b)?,
        bound_corrected: expected_cost_bound_corrected(&a, u, b)?,
        branch_mu_tilde,
        branch_t,
        first_good_round: first_good_round(&a, u, b, args.initial_mu),
        monte_carlo,
        schedule: schedule(u, b, args.initial_mu, args.rounds),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn print_preset(figure: u8, seed: u64) -> Result<()> {
    let configs = preset(figure, seed)?;
    println!("{}", serde_json::to_string_pretty(&configs)?);
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let result = match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Summarize { input, out } => read_trials_csv(&input)
            .and_then(|records| write_summary_csv(&out, &summarize(&records)))
            .map_err(Into::into),
        Command::Drift(args) => drift(args),
        Command::Bound(args) => bound(args),
        Command::Preset { figure, seed } => print_preset(figure, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
