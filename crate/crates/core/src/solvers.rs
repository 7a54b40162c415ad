//! The compact genetic algorithm and its two population-size-free wrappers.
//!
//! * [`run_cga`]: one cGA run with a fixed hypothetical population size and a
//!   generation budget.
//! * [`smart_restart`]: sequential restarts with `mu_l = mu_1 U^(l-1)`, each
//!   round capped at `B_l = b mu_l^2` generations.
//! * [`parallel_run`]: persistent processes with `mu = 2^(l-1)` that share the
//!   budget round-robin, scheduled deterministically one after the other.
//!
//! Runtime is the number of fitness evaluations until the optimum is first
//! sampled. Each generation costs two evaluations and is accounted atomically,
//! so a hit in generation `g` reports `2g` evaluations.

use serde::{Deserialize, Serialize};

use crate::benchmarks::Objective;
use crate::error::{Error, Result};
use crate::model::{BitString, CgaParams, FrequencyVector};
use crate::noise::NoiseSpec;
use crate::rng::{derive_seed, RandomSource};

/// Evaluation cap applied to the wrappers unless the caller chooses another.
pub const DEFAULT_WRAPPER_EVAL_CAP: u64 = 100_000_000;

/// Result of a single bounded cGA run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub success: bool,
    pub generations: u64,
    pub evaluations: u64,
    /// Evaluation count at which the optimum was first sampled; `Some` iff `success`.
    pub first_hit_evaluations: Option<u64>,
}

/// State of one cGA process. Kept alive across calls so the parallel-run
/// scheduler can resume it.
pub struct CgaProcess<'a, F: Objective> {
    objective: &'a F,
    noise: NoiseSpec,
    mu: f64,
    step: f64,
    optimum: Option<usize>,
    freqs: FrequencyVector,
    rng: RandomSource,
    x1: BitString,
    x2: BitString,
    generations: u64,
    hit_generation: Option<u64>,
}

impl<'a, F: Objective> CgaProcess<'a, F> {
    pub fn new(
        objective: &'a F,
        params: CgaParams,
        noise: NoiseSpec,
        rng: RandomSource,
    ) -> Result<Self> {
        if params.n() != objective.dimension() {
            return Err(Error::DimensionMismatch {
                expected: objective.dimension(),
                actual: params.n(),
            });
        }
        let n = params.n();
        Ok(Self {
            objective,
            noise,
            mu: params.mu(),
            step: 1.0 / params.mu(),
            optimum: objective.optimum_value(),
            freqs: FrequencyVector::init(n)?,
            rng,
            x1: BitString::zeros(n),
            x2: BitString::zeros(n),
            generations: 0,
            hit_generation: None,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn generations(&self) -> u64 {
        self.generations
    }

    pub fn evaluations(&self) -> u64 {
        2 * self.generations
    }

    pub fn frequencies(&self) -> &FrequencyVector {
        &self.freqs
    }

    /// Generation in which the optimum was sampled, if it has been.
    pub fn hit_generation(&self) -> Option<u64> {
        self.hit_generation
    }

    /// The two individuals sampled in the most recent generation.
    pub fn last_samples(&self) -> (&BitString, &BitString) {
        (&self.x1, &self.x2)
    }

    /// Run one generation. Returns `true` if either sample is optimal, in
    /// which case the model is left as it was before the generation.
    ///
    /// Optimality is judged on the true fitness; the winner is chosen on the
    /// perceived (noisy) fitness with ties going to the first sample.
    #[inline]
    pub fn step(&mut self) -> bool {
        self.generations += 1;
        self.freqs.sample_into(&mut self.rng, &mut self.x1);
        self.freqs.sample_into(&mut self.rng, &mut self.x2);
        let f1 = self.objective.fitness(&self.x1);
        let f2 = self.objective.fitness(&self.x2);
        if let Some(opt) = self.optimum {
            if f1 == opt || f2 == opt {
                self.hit_generation = Some(self.generations);
                return true;
            }
        }
        let y1 = self.noise.perturb(f1, &mut self.rng);
        let y2 = self.noise.perturb(f2, &mut self.rng);
        if y1 >= y2 {
            self.freqs.apply_update(&self.x1, &self.x2, self.step);
        } else {
            self.freqs.apply_update(&self.x2, &self.x1, self.step);
        }
        false
    }

    /// Run up to `generations` generations, stopping early at a hit.
    /// Returns `true` on a hit.
    pub fn advance(&mut self, generations: u64) -> bool {
        for _ in 0..generations {
            if self.step() {
                return true;
            }
        }
        false
    }

    fn outcome(&self) -> RunOutcome {
        RunOutcome {
            success: self.hit_generation.is_some(),
            generations: self.generations,
            evaluations: self.evaluations(),
            first_hit_evaluations: self.hit_generation.map(|g| 2 * g),
        }
    }
}

/// Run the cGA from the uniform model for at most `max_generations` generations.
pub fn run_cga<F: Objective>(
    params: CgaParams,
    objective: &F,
    noise: NoiseSpec,
    max_generations: u64,
    rng: RandomSource,
) -> Result<RunOutcome> {
    if max_generations == 0 {
        return Err(Error::param("max_generations", "must be at least 1"));
    }
    let mut process = CgaProcess::new(objective, params, noise, rng)?;
    process.advance(max_generations);
    Ok(process.outcome())
}

/// Settings of the smart-restart wrapper.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmartRestartParams {
    update_factor: f64,
    budget_factor: f64,
    initial_mu: f64,
    eval_cap: Option<u64>,
}

impl SmartRestartParams {
    /// Update factor `U > 1` and budget factor `b > 0`; starts at `mu = 2`
    /// with the default evaluation cap.
    pub fn new(update_factor: f64, budget_factor: f64) -> Result<Self> {
        if !(update_factor > 1.0 && update_factor.is_finite()) {
            return Err(Error::param(
                "update_factor",
                format!("must be a finite real > 1, got {update_factor}"),
            ));
        }
        if !(budget_factor > 0.0 && budget_factor.is_finite()) {
            return Err(Error::param(
                "budget_factor",
                format!("must be a finite real > 0, got {budget_factor}"),
            ));
        }
        Ok(Self {
            update_factor,
            budget_factor,
            initial_mu: 2.0,
            eval_cap: Some(DEFAULT_WRAPPER_EVAL_CAP),
        })
    }

    pub fn with_initial_mu(mut self, initial_mu: f64) -> Result<Self> {
        if !(initial_mu >= 1.0 && initial_mu.is_finite()) {
            return Err(Error::param(
                "initial_mu",
                format!("must be a finite real >= 1, got {initial_mu}"),
            ));
        }
        self.initial_mu = initial_mu;
        Ok(self)
    }

    /// `None` removes the cap entirely.
    pub fn with_eval_cap(mut self, eval_cap: Option<u64>) -> Self {
        self.eval_cap = eval_cap;
        self
    }

    pub fn update_factor(&self) -> f64 {
        self.update_factor
    }

    pub fn budget_factor(&self) -> f64 {
        self.budget_factor
    }

    pub fn initial_mu(&self) -> f64 {
        self.initial_mu
    }

    pub fn eval_cap(&self) -> Option<u64> {
        self.eval_cap
    }

    /// `mu_l = initial_mu * U^(l-1)`.
    pub fn round_mu(&self, round: u32) -> f64 {
        round_mu(self.initial_mu, self.update_factor, round)
    }

    /// `B_l` in generations.
    pub fn round_budget(&self, round: u32) -> u64 {
        round_budget(self.budget_factor, self.round_mu(round))
    }
}

/// Population size of restart round `round` (1-based).
pub fn round_mu(initial_mu: f64, update_factor: f64, round: u32) -> f64 {
    assert!(round >= 1, "rounds are numbered from 1");
    initial_mu * update_factor.powi(round as i32 - 1)
}

/// Generation budget `max(1, round_half_up(b mu^2))`.
pub fn round_budget(budget_factor: f64, mu: f64) -> u64 {
    ((budget_factor * mu * mu + 0.5).floor() as u64).max(1)
}

/// One executed restart round.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round_index: u32,
    pub mu: f64,
    pub budget_generations: u64,
    pub outcome: RunOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmartRestartOutcome {
    pub success: bool,
    pub total_evaluations: u64,
    pub rounds: Vec<RoundRecord>,
}

/// Restart the cGA with growing population sizes until a round samples the optimum.
///
/// Round `l` uses a fresh model and the random source seeded with
/// `derive_seed(seed, l)`. When the evaluation cap would be exceeded the
/// current round is truncated and the result is flagged unsuccessful.
pub fn smart_restart<F: Objective>(
    params: &SmartRestartParams,
    objective: &F,
    noise: NoiseSpec,
    seed: u64,
) -> Result<SmartRestartOutcome> {
    let n = objective.dimension();
    let mut total = 0u64;
    let mut rounds = Vec::new();
    for round in 1u32.. {
        let mu = params.round_mu(round);
        let budget = params.round_budget(round);
        let allowed = match params.eval_cap {
            Some(cap) => budget.min(cap.saturating_sub(total) / 2),
            None => budget,
        };
        if allowed == 0 {
            break;
        }
        let rng = RandomSource::new(derive_seed(seed, round as u64));
        let outcome = run_cga(CgaParams::new(n, mu)?, objective, noise, allowed, rng)?;
        total += outcome.first_hit_evaluations.unwrap_or(outcome.evaluations);
        rounds.push(RoundRecord {
            round_index: round,
            mu,
            budget_generations: budget,
            outcome,
        });
        if outcome.success {
            return Ok(SmartRestartOutcome {
                success: true,
                total_evaluations: total,
                rounds,
            });
        }
        if allowed < budget {
            break;
        }
    }
    Ok(SmartRestartOutcome {
        success: false,
        total_evaluations: total,
        rounds,
    })
}

/// One entry of the parallel-run schedule: in `round`, `process` (1-based)
/// runs `generations` further generations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub round: u32,
    pub process: u32,
    pub generations: u64,
}

/// The parallel-run schedule as an endless iterator of slots.
///
/// Round 1 runs process 1 for one generation. Round `l >= 2` runs processes
/// `1..l` for `2^(l-1)` generations each, in order, then starts process `l`
/// and runs it for `2^l - 1` generations. At the end of round `l` every
/// process has run `2^l - 1` generations.
#[derive(Clone, Debug, Default)]
pub struct ParallelSchedule {
    round: u32,
    next_process: u32,
}

impl ParallelSchedule {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for ParallelSchedule {
    type Item = Slot;

    fn next(&mut self) -> Option<Slot> {
        if self.next_process == 0 || self.next_process > self.round {
            self.round = self.round.checked_add(1)?;
            self.next_process = 1;
        }
        if self.round >= 64 {
            return None;
        }
        let slot = if self.next_process < self.round {
            Slot {
                round: self.round,
                process: self.next_process,
                generations: 1u64 << (self.round - 1),
            }
        } else {
            Slot {
                round: self.round,
                process: self.round,
                generations: (1u64 << self.round) - 1,
            }
        };
        self.next_process += 1;
        Some(slot)
    }
}

/// Population size of parallel-run process `process` (1-based): `2^(process-1)`.
pub fn parallel_process_mu(process: u32) -> f64 {
    2f64.powi(process as i32 - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParallelRunOutcome {
    pub success: bool,
    pub total_evaluations: u64,
    /// 1-based index of the process that sampled the optimum.
    pub winner: Option<u32>,
    /// Round during which the run stopped.
    pub last_round: u32,
    /// Generations executed by each process, in creation order.
    pub process_generations: Vec<u64>,
}

/// Run the parallel-run cGA until some process samples the optimum or the
/// evaluation cap would be exceeded. Process `l` draws from the random source
/// seeded with `derive_seed(seed, l)`.
pub fn parallel_run<F: Objective>(
    objective: &F,
    noise: NoiseSpec,
    seed: u64,
    eval_cap: Option<u64>,
) -> Result<ParallelRunOutcome> {
    let n = objective.dimension();
    let cap = eval_cap.unwrap_or(u64::MAX);
    let mut processes: Vec<CgaProcess<'_, F>> = Vec::new();
    let mut total = 0u64;
    let mut last_round = 0;
    let finish = |processes: &[CgaProcess<'_, F>],
                  total: u64,
                  winner: Option<u32>,
                  last_round: u32| ParallelRunOutcome {
        success: winner.is_some(),
        total_evaluations: total,
        winner,
        last_round,
        process_generations: processes.iter().map(|p| p.generations()).collect(),
    };
    for slot in ParallelSchedule::new() {
        last_round = slot.round;
        let idx = (slot.process - 1) as usize;
        if idx == processes.len() {
            let params = CgaParams::new(n, parallel_process_mu(slot.process))?;
            let rng = RandomSource::new(derive_seed(seed, slot.process as u64));
            processes.push(CgaProcess::new(objective, params, noise, rng)?);
        }
        let process = &mut processes[idx];
        for _ in 0..slot.generations {
            if cap - total < 2 {
                return Ok(finish(&processes, total, None, last_round));
            }
            total += 2;
            if process.step() {
                return Ok(finish(&processes, total, Some(slot.process), last_round));
            }
        }
    }
    Ok(finish(&processes, total, None, last_round))
}
