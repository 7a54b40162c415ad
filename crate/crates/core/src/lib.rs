//! The compact genetic algorithm (cGA) with frequency margins, two wrappers
//! that remove the population size parameter, and the tooling to run
//! runtime experiments on pseudo-Boolean benchmarks under Gaussian noise.
//!
//! ```
//! use smartcga::{BenchmarkSpec, NoiseSpec, SmartRestartParams, smart_restart};
//!
//! let jump = BenchmarkSpec::jump(20, 3).unwrap();
//! let params = SmartRestartParams::new(2.0, 0.5 / 20f64.ln()).unwrap();
//! let out = smart_restart(&params, &jump, NoiseSpec::noiseless(), 42).unwrap();
//! assert!(out.success);
//! ```

pub mod benchmarks;
pub mod error;
pub mod harness;
pub mod model;
pub mod noise;
pub mod rng;
pub mod solvers;
pub mod theory;

pub use benchmarks::{BenchmarkKind, BenchmarkSpec, Objective};
pub use error::{Error, Result};
pub use model::{BitString, CgaParams, FrequencyVector};
pub use noise::{noisy_eval, NoiseSpec};
pub use rng::RandomSource;
pub use solvers::{
    parallel_run, run_cga, smart_restart, ParallelRunOutcome, RoundRecord, RunOutcome,
    SmartRestartOutcome, SmartRestartParams,
};
