use std::cmp::Ordering;

use log::warn;
use serde::{Deserialize, Serialize};

use super::{Algorithm, TrialRecord};
use crate::benchmarks::BenchmarkKind;

pub const QUANTILE_METHOD: &str = "linear interpolation between order statistics (type 7)";

/// Type-7 quantile of sorted data: `x[h_lo] + (h - h_lo)(x[h_lo + 1] - x[h_lo])`
/// with `h = (len - 1) q`. Returns `None` for empty input.
pub fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    let last = sorted.len().checked_sub(1)?;
    let h = last as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(last);
    Some(sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo]))
}

/// Aggregate statistics of one grid point, one row of the summary CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub benchmark: BenchmarkKind,
    pub n: usize,
    pub k: Option<usize>,
    pub sigma2: f64,
    pub algorithm: Algorithm,
    pub mu: Option<f64>,
    pub b: Option<f64>,
    #[serde(rename = "U")]
    pub update_factor: Option<f64>,
    pub trials: usize,
    pub success_count: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

fn cmp_opt(a: Option<f64>, b: Option<f64>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (a, b) => a.is_some().cmp(&b.is_some()),
    }
}

fn cmp_coordinates(a: &TrialRecord, b: &TrialRecord) -> Ordering {
    a.benchmark
        .cmp(&b.benchmark)
        .then(a.n.cmp(&b.n))
        .then(a.k.cmp(&b.k))
        .then(a.algorithm.cmp(&b.algorithm))
        .then(a.sigma2.total_cmp(&b.sigma2))
        .then(cmp_opt(a.mu, b.mu))
        .then(cmp_opt(a.b, b.b))
        .then(cmp_opt(a.update_factor, b.update_factor))
}

/// Group records by their configuration coordinates and compute median and
/// quartiles of the evaluation counts. Rows are sorted by coordinates, so the
/// output does not depend on the input order.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by(|a, b| cmp_coordinates(a, b));
    let mut rows = Vec::new();
    for group in sorted.chunk_by(|a, b| cmp_coordinates(a, b) == Ordering::Equal) {
        let first = group[0];
        let mut evals: Vec<f64> = group.iter().map(|r| r.evaluations as f64).collect();
        evals.sort_by(f64::total_cmp);
        let (Some(median), Some(q1), Some(q3)) = (
            quantile(&evals, 0.5),
            quantile(&evals, 0.25),
            quantile(&evals, 0.75),
        ) else {
            warn!("skipping empty group for {} n={}", first.benchmark, first.n);
            continue;
        };
        rows.push(SummaryRow {
            benchmark: first.benchmark,
            n: first.n,
            k: first.k,
            sigma2: first.sigma2,
            algorithm: first.algorithm,
            mu: first.mu,
            b: first.b,
            update_factor: first.update_factor,
            trials: group.len(),
            success_count: group.iter().filter(|r| r.success).count(),
            median,
            q1,
            q3,
        });
    }
    rows
}
