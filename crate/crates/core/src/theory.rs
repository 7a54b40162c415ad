//! Closed-form restart-cost bound for the smart-restart cGA, the first
//! "good" round index, and a Monte-Carlo model of the idealized restart process.
//!
//! The idealized process assumes that from population size `mu_tilde` on, a
//! cGA run with population `mu` succeeds within `mu * T` evaluations with
//! probability at least `p`. Rounds before the first round `l'` with
//! `mu_l >= mu_tilde` and `b mu_l^2 >= mu_l T` always fail.

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::solvers::{round_budget, round_mu};

/// Parameters of the linear-runtime assumption.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssumptionL {
    mu_tilde: f64,
    t: f64,
    p: f64,
    mu_plus: Option<f64>,
}

impl AssumptionL {
    /// `mu_tilde >= 1`, `T > 0`, `p` in `(0, 1]`. `p = 1` is accepted as the
    /// limit of an always-successful run.
    pub fn new(mu_tilde: f64, t: f64, p: f64) -> Result<Self> {
        if !(mu_tilde >= 1.0 && mu_tilde.is_finite()) {
            return Err(Error::param(
                "mu_tilde",
                format!("must be >= 1, got {mu_tilde}"),
            ));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::param("T", format!("must be > 0, got {t}")));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::param("p", format!("must lie in (0, 1], got {p}")));
        }
        Ok(Self {
            mu_tilde,
            t,
            p,
            mu_plus: None,
        })
    }

    /// Add the upper population cap `mu_plus >= mu_tilde`.
    pub fn with_mu_plus(mut self, mu_plus: f64) -> Result<Self> {
        if mu_plus.is_nan() || mu_plus < self.mu_tilde {
            return Err(Error::param(
                "mu_plus",
                format!("must be >= mu_tilde = {}, got {mu_plus}", self.mu_tilde),
            ));
        }
        self.mu_plus = Some(mu_plus);
        Ok(self)
    }

    pub fn mu_tilde(&self) -> f64 {
        self.mu_tilde
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mu_plus(&self) -> Option<f64> {
        self.mu_plus
    }

    /// Number of rounds `l >= l'` whose population stays within `mu_plus`.
    /// `None` without a cap.
    pub fn capped_rounds(
        &self,
        update_factor: f64,
        budget_factor: f64,
        initial_mu: f64,
    ) -> Option<u32> {
        let cap = self.mu_plus?;
        let first = first_good_round(self, update_factor, budget_factor, initial_mu);
        Some(
            (first..)
                .take_while(|&l| round_mu(initial_mu, update_factor, l) <= cap)
                .count() as u32,
        )
    }
}

fn check_factors(update_factor: f64, budget_factor: f64) -> Result<()> {
    if !(update_factor > 1.0 && update_factor.is_finite()) {
        return Err(Error::param(
            "U",
            format!("must be > 1, got {update_factor}"),
        ));
    }
    if !(budget_factor > 0.0 && budget_factor.is_finite()) {
        return Err(Error::param(
            "b",
            format!("must be > 0, got {budget_factor}"),
        ));
    }
    Ok(())
}

/// The two branches `(b mu_tilde^2, T^2 / b)` of the max term.
pub fn max_branches(a: &AssumptionL, budget_factor: f64) -> (f64, f64) {
    (
        budget_factor * a.mu_tilde * a.mu_tilde,
        a.t * a.t / budget_factor,
    )
}

/// The published upper bound on the expected number of evaluations of the
/// smart-restart cGA, evaluated as printed:
///
/// ```text
/// (U^2/(U^2-1) + (1-p)U^2/(1-(1-p)U^2)) * max{b mu~^2, T^2/b} + pU/(1-(1-p)U) * mu~ T
/// ```
///
/// Requires `p > 1 - 1/U^2`, otherwise the geometric series diverges.
///
/// The last term only dominates the success cost of the first good round
/// when `mu~ >= T/b`. For `T/b > mu~` that round has population up to
/// `U T/b` and the printed value can undercut the true expectation; see
/// [`expected_cost_bound_corrected`].
pub fn expected_cost_bound(a: &AssumptionL, update_factor: f64, budget_factor: f64) -> Result<f64> {
    let (restarts, success) = bound_coefficients(a, update_factor, budget_factor)?;
    let (left, right) = max_branches(a, budget_factor);
    Ok(restarts * left.max(right) + success * a.mu_tilde * a.t)
}

/// [`expected_cost_bound`] with the last term taken at `max{mu~, T/b} T`,
/// which is what the first good round can actually cost.
pub fn expected_cost_bound_corrected(
    a: &AssumptionL,
    update_factor: f64,
    budget_factor: f64,
) -> Result<f64> {
    let (restarts, success) = bound_coefficients(a, update_factor, budget_factor)?;
    let (left, right) = max_branches(a, budget_factor);
    let threshold = a.mu_tilde.max(a.t / budget_factor);
    Ok(restarts * left.max(right) + success * threshold * a.t)
}

fn bound_coefficients(
    a: &AssumptionL,
    update_factor: f64,
    budget_factor: f64,
) -> Result<(f64, f64)> {
    check_factors(update_factor, budget_factor)?;
    let u2 = update_factor * update_factor;
    let lower = 1.0 - 1.0 / u2;
    if a.p <= lower {
        return Err(Error::OutOfRegime { p: a.p, lower });
    }
    let q = 1.0 - a.p;
    let restarts = u2 / (u2 - 1.0) + q * u2 / (1.0 - q * u2);
    let success = a.p * update_factor / (1.0 - q * update_factor);
    Ok((restarts, success))
}

/// Smallest round `l` with `mu_l >= mu_tilde` and `b mu_l^2 >= mu_l T`.
pub fn first_good_round(
    a: &AssumptionL,
    update_factor: f64,
    budget_factor: f64,
    initial_mu: f64,
) -> u32 {
    assert!(update_factor > 1.0 && budget_factor > 0.0 && initial_mu > 0.0);
    (1u32..)
        .find(|&l| {
            let mu = round_mu(initial_mu, update_factor, l);
            mu >= a.mu_tilde && budget_factor * mu * mu >= mu * a.t
        })
        .expect("population sizes grow without bound")
}

/// How a failed round is charged in the Monte-Carlo model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CostConvention {
    /// A failed round costs `B_l = b mu_l^2` (unrounded), the same units as `mu T`.
    Literal,
    /// A failed round costs `2 B_l` evaluations with `B_l` rounded to whole generations.
    Evaluations,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Mean cost of the idealized restart process over `trials` simulations.
pub fn montecarlo_restart_cost(
    a: &AssumptionL,
    update_factor: f64,
    budget_factor: f64,
    initial_mu: f64,
    trials: u64,
    convention: CostConvention,
    rng: &mut RandomSource,
) -> Result<MonteCarloEstimate> {
    check_factors(update_factor, budget_factor)?;
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    let first_good = first_good_round(a, update_factor, budget_factor, initial_mu);
    debug!("monte carlo: l' = {first_good}");
    let failure_cost = |l: u32| {
        let mu = round_mu(initial_mu, update_factor, l);
        match convention {
            CostConvention::Literal => budget_factor * mu * mu,
            CostConvention::Evaluations => 2.0 * round_budget(budget_factor, mu) as f64,
        }
    };
    // Rounds before l' always fail, so their cost is the same in every trial.
    let prefix: f64 = (1..first_good).map(failure_cost).sum();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        let mut cost = prefix;
        let mut l = first_good;
        loop {
            if a.p >= 1.0 || rng.uniform() < a.p {
                cost += round_mu(initial_mu, update_factor, l) * a.t;
                break;
            }
            cost += failure_cost(l);
            l += 1;
        }
        sum += cost;
        sum_sq += cost * cost;
    }
    let n = trials as f64;
    let mean = sum / n;
    let var = if trials > 1 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        std_error: (var / n).sqrt(),
        trials,
    })
}

/// One planned restart round.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub round: u32,
    pub mu: f64,
    pub budget_generations: u64,
}

/// The first `rounds` rounds exactly as the smart-restart solver executes them.
pub fn schedule(
    update_factor: f64,
    budget_factor: f64,
    initial_mu: f64,
    rounds: u32,
) -> Vec<ScheduleEntry> {
    (1..=rounds)
        .map(|round| {
            let mu = round_mu(initial_mu, update_factor, round);
            ScheduleEntry {
                round,
                mu,
                budget_generations: round_budget(budget_factor, mu),
            }
        })
        .collect()
}
