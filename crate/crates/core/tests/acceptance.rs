//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails. Informational lines start with INFO.
//!
//! All experiments use fixed master seeds chosen before the first run.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use smartcga::harness::{
    drift_experiment, run_grid, summarize, trials_to_writer, Algorithm, BudgetFactor,
    ExperimentConfig, TrialRecord,
};
use smartcga::theory::{
    expected_cost_bound, expected_cost_bound_corrected, max_branches, montecarlo_restart_cost,
    AssumptionL, CostConvention,
};
use smartcga::{BenchmarkSpec, Objective, RandomSource};

const SEED: u64 = 20_240_601;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn info(msg: impl AsRef<str>) {
    println!("INFO {}", msg.as_ref());
}

fn cga_config(
    benchmark: BenchmarkSpec,
    sigma2: f64,
    mu_list: Vec<f64>,
    trials: u32,
) -> ExperimentConfig {
    ExperimentConfig {
        benchmark,
        algorithm: Algorithm::Cga,
        sigma2_list: vec![sigma2],
        mu_list,
        b_list: vec![],
        update_factor: 2.0,
        trials,
        master_seed: SEED,
        eval_cap: None,
    }
}

fn medians_by_mu(records: &[TrialRecord]) -> Vec<(f64, f64, usize)> {
    summarize(records)
        .iter()
        .map(|r| (r.mu.unwrap(), r.median, r.success_count))
        .collect()
}

fn one_max_anchor() -> Verdict {
    let om = BenchmarkSpec::one_max(100).unwrap();
    let bands = [(512.0, 12_192.0, 36_576.0), (1024.0, 24_281.0, 72_843.0)];
    let records = run_grid(&cga_config(om, 0.0, vec![512.0, 1024.0], 10)).unwrap();
    let medians = medians_by_mu(&records);
    let mut pass = true;
    let mut parts = Vec::new();
    for ((mu, median, ok), (_, lo, hi)) in medians.iter().zip(bands) {
        let inside = (lo..=hi).contains(median) && *ok == 10;
        pass &= inside;
        parts.push(format!(
            "mu={mu}: median {median} in [{lo}, {hi}]? {inside}"
        ));
    }

    // Same grid under noise variance n, for comparison with the reference values.
    let noisy = run_grid(&cga_config(om, 100.0, vec![512.0, 1024.0], 10)).unwrap();
    for (mu, median, _) in medians_by_mu(&noisy) {
        info(format!("onemax n=100 sigma2=100 mu={mu}: median {median}"));
    }
    verdict(pass, parts.join("; "))
}

fn noisy_one_max() -> Verdict {
    let n = 100.0f64;
    let sigma2 = 100.0;
    let mu = (7.0 * sigma2 * n.sqrt() * n.ln().powi(2) + 0.5).floor();
    let om = BenchmarkSpec::one_max(100).unwrap();
    let records = run_grid(&cga_config(om, sigma2, vec![mu], 20)).unwrap();
    let (_, median, ok) = medians_by_mu(&records)[0];
    let (lo, hi) = (5_042_714.0 * 0.8, 6_131_522.0 * 1.2);
    let evals: Vec<u64> = records.iter().map(|r| r.evaluations).collect();
    info(format!(
        "noisy onemax mu={mu}: min {} max {}",
        evals.iter().min().unwrap(),
        evals.iter().max().unwrap()
    ));
    verdict(
        ok == 20 && (lo..=hi).contains(&median),
        format!("mu={mu}, median {median} in [{lo}, {hi}], {ok}/20 successes"),
    )
}

fn jump_efficiency() -> Verdict {
    let j = BenchmarkSpec::jump(50, 10).unwrap();
    let mus = (15..=18).map(|e| 2f64.powi(e)).collect();
    let records = run_grid(&cga_config(j, 0.0, mus, 10)).unwrap();
    let medians = medians_by_mu(&records);
    let pass = medians.iter().all(|&(_, m, ok)| m < 4e6 && ok == 10);
    let parts: Vec<String> = medians
        .iter()
        .map(|(mu, m, ok)| format!("mu={mu}: {m} ({ok}/10)"))
        .collect();
    verdict(pass, format!("medians < 4e6: {}", parts.join(", ")))
}

fn drift_budget() -> Verdict {
    let mus = [16.0, 32.0, 64.0];
    let stats = drift_experiment(50, &mus, 200, SEED).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for s in &stats {
        let ok = s.censored == 0 && s.mean <= 4.0 * s.mu * s.mu;
        pass &= ok;
        parts.push(format!(
            "mu={}: mean {:.1} <= {}",
            s.mu,
            s.mean,
            4.0 * s.mu * s.mu
        ));
    }
    for w in stats.windows(2) {
        let ratio = w[1].mean / w[0].mean;
        pass &= (2.5..=6.0).contains(&ratio);
        parts.push(format!("mean({})/mean({}) = {ratio:.3}", w[1].mu, w[0].mu));
    }
    verdict(pass, parts.join("; "))
}

struct BoundCase {
    update_factor: f64,
    budget_factor: f64,
    a: AssumptionL,
}

fn log_uniform(rng: &mut RandomSource, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

fn sample_bound_cases(count: usize) -> Vec<BoundCase> {
    let mut rng = RandomSource::new(SEED);
    (0..count)
        .map(|_| {
            let update_factor = rng.random_range(1.2..4.0);
            let lower = 1.0 - 1.0 / (update_factor * update_factor);
            let p = loop {
                let p: f64 = rng.random_range(lower..1.0);
                if p > lower {
                    break p;
                }
            };
            let budget_factor = log_uniform(&mut rng, 0.01, 10.0);
            let mu_tilde = log_uniform(&mut rng, 2.0, 1000.0);
            let t = log_uniform(&mut rng, 1.0, 1000.0);
            BoundCase {
                update_factor,
                budget_factor,
                a: AssumptionL::new(mu_tilde, t, p).unwrap(),
            }
        })
        .collect()
}

fn restart_bound() -> Verdict {
    let cases = sample_bound_cases(100);
    let results: Vec<(f64, f64, f64, f64)> = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut rng = RandomSource::new(SEED).child(i as u64);
            let est = montecarlo_restart_cost(
                &c.a,
                c.update_factor,
                c.budget_factor,
                2.0,
                100_000,
                CostConvention::Literal,
                &mut rng,
            )
            .unwrap();
            let printed = expected_cost_bound(&c.a, c.update_factor, c.budget_factor).unwrap();
            let corrected =
                expected_cost_bound_corrected(&c.a, c.update_factor, c.budget_factor).unwrap();
            (est.mean, est.std_error, printed, corrected)
        })
        .collect();

    let mut violations = Vec::new();
    let mut corrected_violations = 0;
    for (c, &(mean, se, printed, corrected)) in cases.iter().zip(&results) {
        if mean > printed + 3.0 * se {
            violations.push(format!(
                "U={:.3} b={:.4} p={:.4} mu~={:.2} T={:.2}: {mean:.1} vs {printed:.1}",
                c.update_factor,
                c.budget_factor,
                c.a.p(),
                c.a.mu_tilde(),
                c.a.t()
            ));
        }
        if mean > corrected + 3.0 * se {
            corrected_violations += 1;
        }
    }
    let in_regime: Vec<_> = cases
        .iter()
        .zip(&results)
        .filter(|(c, _)| c.a.mu_tilde() >= c.a.t() / c.budget_factor)
        .collect();
    let regime_violations = in_regime
        .iter()
        .filter(|(_, &(mean, se, printed, _))| mean > printed + 3.0 * se)
        .count();
    info(format!(
        "restart bound: {regime_violations}/{} violations among configs with mu~ >= T/b",
        in_regime.len()
    ));
    info(format!(
        "restart bound with last term max(mu~, T/b) T: {corrected_violations}/100 violations"
    ));
    for v in violations.iter().take(3) {
        info(format!("restart bound exceeded at {v}"));
    }

    // Branch equality at the balanced budget b = T / mu~.
    let mut worst = 0.0f64;
    for c in &cases {
        let b = c.a.t() / c.a.mu_tilde();
        let (left, right) = max_branches(&c.a, b);
        worst = worst.max((left - right).abs() / left.max(right));
    }
    let balanced = worst <= 1e-12;
    verdict(
        violations.is_empty() && balanced,
        format!(
            "{}/100 configs exceed the bound by more than 3 SE; branch mismatch at b = T/mu~: {worst:e}",
            violations.len()
        ),
    )
}

fn parameterless_success() -> Verdict {
    let benches = [
        BenchmarkSpec::jump(50, 10).unwrap(),
        BenchmarkSpec::dlb(30).unwrap(),
    ];
    let mut pass = true;
    let mut smart_beats_para = false;
    let mut parts = Vec::new();
    for bench in benches {
        let base = ExperimentConfig {
            benchmark: bench,
            algorithm: Algorithm::Smart,
            sigma2_list: vec![0.0],
            mu_list: vec![],
            b_list: vec![BudgetFactor::Value(8.0), BudgetFactor::Auto],
            update_factor: 2.0,
            trials: 5,
            master_seed: SEED,
            eval_cap: Some(100_000_000),
        };
        let smart = summarize(&run_grid(&base).unwrap());
        let para = summarize(
            &run_grid(&ExperimentConfig {
                algorithm: Algorithm::Para,
                b_list: vec![],
                ..base.clone()
            })
            .unwrap(),
        );
        let by_b = |b: f64| smart.iter().find(|r| r.b == Some(b)).unwrap();
        let fixed = by_b(8.0);
        let auto = by_b(BudgetFactor::Auto.resolve(bench.n()));
        smart_beats_para |= auto.median <= para[0].median;
        for (label, row) in [
            ("smart b=8", fixed),
            ("smart auto", auto),
            ("para", &para[0]),
        ] {
            pass &= row.success_count == 5;
            parts.push(format!(
                "{} {label}: {}/5, median {}",
                bench.kind(),
                row.success_count,
                row.median
            ));
        }
    }
    parts.push(format!(
        "smart auto <= para on some benchmark: {smart_beats_para}"
    ));
    verdict(pass && smart_beats_para, parts.join("; "))
}

fn benchmark_oracles() -> Verdict {
    let mut specs = Vec::new();
    for n in 2..=12 {
        specs.push(BenchmarkSpec::one_max(n).unwrap());
        specs.push(BenchmarkSpec::leading_ones(n).unwrap());
        if n >= 3 {
            specs.push(BenchmarkSpec::jump(n, 3).unwrap());
        }
        if n % 2 == 0 {
            specs.push(BenchmarkSpec::dlb(n).unwrap());
        }
    }
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for spec in &specs {
        for x in common::all_strings(spec.n()) {
            checked += 1;
            mismatches += u64::from(spec.fitness(&x) != common::naive(spec, &x));
        }
    }
    // Valley: every string with n-k < |x| < n is worse than every other string.
    let mut valley_ok = true;
    for n in 4..=12 {
        let spec = BenchmarkSpec::jump(n, 3).unwrap();
        let in_valley = |x: &smartcga::BitString| x.count_ones() > n - 3 && x.count_ones() < n;
        let (mut valley_max, mut rest_min) = (0, usize::MAX);
        for x in common::all_strings(n) {
            let f = spec.fitness(&x);
            if in_valley(&x) {
                valley_max = valley_max.max(f);
            } else {
                rest_min = rest_min.min(f);
            }
        }
        valley_ok &= valley_max < rest_min;
    }
    verdict(
        mismatches == 0 && valley_ok,
        format!(
            "{checked} evaluations, {mismatches} mismatches; valley property holds: {valley_ok}"
        ),
    )
}

fn determinism() -> Verdict {
    let configs = [
        cga_config(BenchmarkSpec::jump(12, 3).unwrap(), 6.0, vec![8.0, 32.0], 3),
        ExperimentConfig {
            algorithm: Algorithm::Smart,
            b_list: vec![BudgetFactor::Value(8.0), BudgetFactor::Auto],
            ..cga_config(BenchmarkSpec::dlb(12).unwrap(), 0.0, vec![], 3)
        },
        ExperimentConfig {
            algorithm: Algorithm::Para,
            ..cga_config(BenchmarkSpec::leading_ones(16).unwrap(), 8.0, vec![], 3)
        },
    ];
    let bytes = |c: &ExperimentConfig| {
        let mut out = Vec::new();
        trials_to_writer(&mut out, &run_grid(c).unwrap()).unwrap();
        out
    };
    let identical = configs.iter().all(|c| bytes(c) == bytes(c));
    verdict(
        identical,
        format!(
            "{} grids repeated, identical CSV: {identical}",
            configs.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("benchmark oracles", benchmark_oracles),
        ("determinism", determinism),
        ("onemax anchor", one_max_anchor),
        ("drift budget", drift_budget),
        ("restart cost bound", restart_bound),
        ("jump efficiency", jump_efficiency),
        ("parameter-less success", parameterless_success),
        ("noisy onemax replication", noisy_one_max),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "{} {name}: {} ({:.1}s)",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            started.elapsed().as_secs_f64()
        );
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
