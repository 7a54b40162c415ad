use super::{Algorithm, BudgetFactor, ExperimentConfig};
use crate::benchmarks::BenchmarkSpec;
use crate::error::{Error, Result};

fn powers_of_two(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|e| 2f64.powi(e)).collect()
}

/// Standard experiment grid number `figure` (1: OneMax, 2:
/// LeadingOnes, 3: Jump, 4: DLB): the fixed-size cGA over its population
/// range with 10 trials, smart-restart with `b in {8, 0.5/ln n}` and
/// parallel-run with 20 trials each, all under `sigma^2 in {0, n/2, n, 2n, 4n}`.
pub fn preset(figure: u8, master_seed: u64) -> Result<Vec<ExperimentConfig>> {
    let (benchmark, mu_list) = match figure {
        1 => (BenchmarkSpec::one_max(100)?, powers_of_two(5, 10)),
        2 => (BenchmarkSpec::leading_ones(50)?, powers_of_two(2, 10)),
        3 => (BenchmarkSpec::jump(50, 10)?, powers_of_two(9, 18)),
        4 => (BenchmarkSpec::dlb(30)?, powers_of_two(1, 14)),
        other => {
            return Err(Error::param(
                "figure",
                format!("expected 1, 2, 3 or 4, got {other}"),
            ))
        }
    };
    let n = benchmark.n() as f64;
    let sigma2_list = vec![0.0, n / 2.0, n, 2.0 * n, 4.0 * n];
    let base = ExperimentConfig {
        benchmark,
        algorithm: Algorithm::Cga,
        sigma2_list,
        mu_list: Vec::new(),
        b_list: Vec::new(),
        update_factor: 2.0,
        trials: 20,
        master_seed,
        eval_cap: None,
    };
    Ok(vec![
        ExperimentConfig {
            mu_list,
            trials: 10,
            ..base.clone()
        },
        ExperimentConfig {
            algorithm: Algorithm::Smart,
            b_list: vec![BudgetFactor::Value(8.0), BudgetFactor::Auto],
            ..base.clone()
        },
        ExperimentConfig {
            algorithm: Algorithm::Para,
            ..base
        },
    ])
}
