//! Genetic drift of a neutral bit.
//!
//! The cGA runs on `g(x) = OneMax(x_2, ..., x_n)`, so the first bit carries no
//! fitness signal. We record the first generation in which its frequency sits
//! on a margin.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::quantile;
use crate::benchmarks::Objective;
use crate::error::{Error, Result};
use crate::model::{BitString, CgaParams};
use crate::noise::NoiseSpec;
use crate::rng::{derive_seed, RandomSource};
use crate::solvers::CgaProcess;

/// OneMax on all bits but the first. Never terminates a run.
#[derive(Clone, Copy, Debug)]
pub struct NeutralFirstBit {
    n: usize,
}

impl NeutralFirstBit {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self { n })
    }
}

impl Objective for NeutralFirstBit {
    fn dimension(&self) -> usize {
        self.n
    }

    fn fitness(&self, x: &BitString) -> usize {
        x.bits()[1..].iter().filter(|&&b| b).count()
    }

    fn optimum_value(&self) -> Option<usize> {
        None
    }
}

/// Generation at which the neutral frequency first reaches `1/n` or `1 - 1/n`,
/// or `None` if that takes more than `max_generations`.
pub fn drift_hitting_time(
    n: usize,
    mu: f64,
    max_generations: u64,
    rng: RandomSource,
) -> Result<Option<u64>> {
    let objective = NeutralFirstBit::new(n)?;
    let mut process = CgaProcess::new(
        &objective,
        CgaParams::new(n, mu)?,
        NoiseSpec::noiseless(),
        rng,
    )?;
    while process.generations() < max_generations {
        process.step();
        if process.frequencies().at_margin(0) {
            return Ok(Some(process.generations()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftStats {
    pub mu: f64,
    pub trials: usize,
    /// Trials that hit the generation guard without reaching a margin.
    pub censored: usize,
    pub mean: f64,
    pub median: f64,
    /// `mean / mu^2`.
    pub ratio: f64,
    pub min: u64,
    pub max: u64,
    pub hitting_times: Vec<u64>,
}

/// Guard on the run length, far beyond the expected `O(mu^2)` hitting time.
const GUARD_FACTOR: f64 = 1000.0;

/// Hitting-time statistics of the neutral bit for each population size.
/// Trial `t` of `mu_list[i]` is seeded with `derive_seed(derive_seed(master_seed, i), t)`.
pub fn drift_experiment(
    n: usize,
    mu_list: &[f64],
    trials: usize,
    master_seed: u64,
) -> Result<Vec<DriftStats>> {
    NeutralFirstBit::new(n)?;
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    mu_list
        .iter()
        .enumerate()
        .map(|(i, &mu)| {
            CgaParams::new(n, mu)?;
            let guard = (GUARD_FACTOR * mu * mu).ceil() as u64;
            let point_seed = derive_seed(master_seed, i as u64);
            let runs: Vec<Option<u64>> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    drift_hitting_time(
                        n,
                        mu,
                        guard,
                        RandomSource::new(derive_seed(point_seed, t as u64)),
                    )
                })
                .collect::<Result<_>>()?;
            let mut times: Vec<u64> = runs.iter().flatten().copied().collect();
            let censored = trials - times.len();
            let mut sorted: Vec<f64> = times.iter().map(|&t| t as f64).collect();
            sorted.sort_by(f64::total_cmp);
            let mean = sorted.iter().sum::<f64>() / sorted.len().max(1) as f64;
            let median = quantile(&sorted, 0.5).unwrap_or(f64::NAN);
            let min = times.iter().copied().min().unwrap_or(0);
            let max = times.iter().copied().max().unwrap_or(0);
            times.shrink_to_fit();
            Ok(DriftStats {
                mu,
                trials,
                censored,
                mean,
                median,
                ratio: mean / (mu * mu),
                min,
                max,
                hitting_times: runs.iter().map(|r| r.unwrap_or(guard)).collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_bit_is_neutral() {
        let g = NeutralFirstBit::new(5).unwrap();
        let a = BitString::parse("01111").unwrap();
        let b = BitString::parse("11111").unwrap();
        assert_eq!(g.fitness(&a), g.fitness(&b));
        assert!(NeutralFirstBit::new(2).is_err());
    }

    #[test]
    fn hitting_time_respects_step_bound() {
        let n = 50;
        for (i, mu) in [8.0, 16.0].into_iter().enumerate() {
            for t in 0..20 {
                let seed = derive_seed(i as u64, t);
                let hit = drift_hitting_time(n, mu, 1_000_000, RandomSource::new(seed))
                    .unwrap()
                    .unwrap();
                assert!(
                    hit as f64 >= mu * (0.5 - 1.0 / n as f64),
                    "mu={mu} hit={hit}"
                );
            }
        }
    }

    #[test]
    fn experiment_is_deterministic() {
        let a = drift_experiment(20, &[4.0, 8.0], 10, 3).unwrap();
        let b = drift_experiment(20, &[4.0, 8.0], 10, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].censored, 0);
        assert_eq!(a[0].hitting_times.len(), 10);
    }
}
