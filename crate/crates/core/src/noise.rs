//! Additive centered Gaussian posterior noise.
//!
//! The perceived fitness of `x` is `f(x) + D` with `D ~ N(0, sigma^2)` drawn
//! anew on every evaluation. A variance of zero returns `f(x)` exactly and
//! draws nothing from the random source.

use crate::benchmarks::Objective;
use crate::error::{Error, Result};
use crate::model::BitString;
use crate::rng::RandomSource;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    variance: f64,
    sigma: f64,
}

impl NoiseSpec {
    pub fn new(variance: f64) -> Result<Self> {
        if !(variance >= 0.0 && variance.is_finite()) {
            return Err(Error::param(
                "sigma2",
                format!("noise variance must be a finite value >= 0, got {variance}"),
            ));
        }
        Ok(Self {
            variance,
            sigma: variance.sqrt(),
        })
    }

    pub fn noiseless() -> Self {
        Self {
            variance: 0.0,
            sigma: 0.0,
        }
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn is_noiseless(&self) -> bool {
        self.variance == 0.0
    }

    /// Perturb a true fitness value with a fresh noise sample.
    #[inline]
    pub fn perturb(&self, fitness: usize, rng: &mut RandomSource) -> f64 {
        if self.variance == 0.0 {
            fitness as f64
        } else {
            fitness as f64 + self.sigma * rng.standard_normal()
        }
    }
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self::noiseless()
    }
}

/// Perceived fitness `f(x) + D` of `x`.
pub fn noisy_eval<F: Objective + ?Sized>(
    f: &F,
    x: &BitString,
    spec: &NoiseSpec,
    rng: &mut RandomSource,
) -> f64 {
    spec.perturb(f.fitness(x), rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::BenchmarkSpec;
    use rand::RngCore;

    #[test]
    fn zero_variance_is_exact_and_draws_nothing() {
        let om = BenchmarkSpec::one_max(4).unwrap();
        let x = BitString::ones(4);
        let mut rng = RandomSource::new(1);
        let mut untouched = RandomSource::new(1);
        assert_eq!(noisy_eval(&om, &x, &NoiseSpec::noiseless(), &mut rng), 4.0);
        assert_eq!(rng.next_u64(), untouched.next_u64());
    }

    #[test]
    fn rejects_negative_variance() {
        assert!(NoiseSpec::new(-1.0).is_err());
        assert!(NoiseSpec::new(f64::INFINITY).is_err());
        assert!(NoiseSpec::new(0.0).unwrap().is_noiseless());
    }

    #[test]
    fn moments_match_variance() {
        // sigma^2 = 100, 1e5 draws: se(mean) = 0.0316, se(var) ~ 0.447;
        // bands of +-0.15 and +-3 are beyond 4.7 and 6.7 standard errors.
        let n = 100;
        let om = BenchmarkSpec::one_max(n).unwrap();
        let x = BitString::new((0..n).map(|j| j % 3 == 0).collect());
        let truth = om.fitness(&x) as f64;
        let spec = NoiseSpec::new(100.0).unwrap();
        let mut rng = RandomSource::new(77);
        let draws = 100_000;
        let vals: Vec<f64> = (0..draws)
            .map(|_| noisy_eval(&om, &x, &spec, &mut rng))
            .collect();
        let mean = vals.iter().sum::<f64>() / draws as f64;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
        assert!((mean - truth).abs() < 0.15, "mean {mean} vs {truth}");
        assert!((var - 100.0).abs() < 3.0, "variance {var}");
    }

    #[test]
    fn repeated_evaluations_differ() {
        let om = BenchmarkSpec::one_max(8).unwrap();
        let x = BitString::ones(8);
        let spec = NoiseSpec::new(100.0).unwrap();
        let mut rng = RandomSource::new(5);
        let a = noisy_eval(&om, &x, &spec, &mut rng);
        let b = noisy_eval(&om, &x, &spec, &mut rng);
        assert_ne!(a, b);
    }
}
