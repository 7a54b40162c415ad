//! The cGA's univariate model: a frequency vector with margins `[1/n, 1 - 1/n]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// A sampled individual.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    /// Parse a string of `0`/`1` characters. Returns `None` on any other character.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// The `n`-bit string whose bits are the binary digits of `value`, most significant first.
    pub fn from_bits_of(value: u64, n: usize) -> Self {
        Self((0..n).map(|j| (value >> (n - 1 - j)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&b| b)
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Problem dimension and hypothetical population size of one cGA run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CgaParams {
    n: usize,
    mu: f64,
}

impl CgaParams {
    pub fn new(n: usize, mu: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        if !(mu >= 1.0 && mu.is_finite()) {
            return Err(Error::param(
                "mu",
                format!("must be a finite real >= 1, got {mu}"),
            ));
        }
        Ok(Self { n, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Sampling frequencies `p_j`, one per bit, kept inside `[1/n, 1 - 1/n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyVector {
    freqs: Vec<f64>,
    lower: f64,
    upper: f64,
}

/// `p * 2^64`, so that `next_u64() < threshold` holds with probability `p`.
#[inline]
fn threshold(p: f64) -> u64 {
    // `as` saturates, so p in [0, 1) maps into [0, u64::MAX].
    (p * 18_446_744_073_709_551_616.0) as u64
}

impl FrequencyVector {
    /// The initial model: all frequencies 1/2.
    pub fn init(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let nf = n as f64;
        Ok(Self {
            freqs: vec![0.5; n],
            lower: 1.0 / nf,
            upper: 1.0 - 1.0 / nf,
        })
    }

    /// Build a model from explicit frequencies. Each entry must already lie within the margins.
    pub fn from_frequencies(freqs: Vec<f64>) -> Result<Self> {
        let mut v = Self::init(freqs.len())?;
        if let Some(&bad) = freqs.iter().find(|&&p| !(p >= v.lower && p <= v.upper)) {
            return Err(Error::param(
                "freqs",
                format!("{bad} lies outside [{}, {}]", v.lower, v.upper),
            ));
        }
        v.freqs = freqs;
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.freqs
    }

    pub fn get(&self, j: usize) -> f64 {
        self.freqs[j]
    }

    /// Lower margin `1/n`.
    pub fn lower_margin(&self) -> f64 {
        self.lower
    }

    /// Upper margin `1 - 1/n`.
    pub fn upper_margin(&self) -> f64 {
        self.upper
    }

    /// Whether frequency `j` sits on either margin.
    pub fn at_margin(&self, j: usize) -> bool {
        let p = self.freqs[j];
        p <= self.lower || p >= self.upper
    }

    /// Sample an individual; bit `j` is one with probability `p_j`.
    /// Consumes exactly `n` draws from `rng`.
    pub fn sample(&self, rng: &mut RandomSource) -> BitString {
        let mut x = BitString::zeros(self.len());
        self.sample_into(rng, &mut x);
        x
    }

    /// Like [`sample`](Self::sample), reusing the buffer of `out`.
    pub fn sample_into(&self, rng: &mut RandomSource, out: &mut BitString) {
        use rand::RngCore;
        out.0.clear();
        out.0
            .extend(self.freqs.iter().map(|&p| rng.next_u64() < threshold(p)));
    }

    /// `p <- clamp(p + (winner - loser) / mu, 1/n, 1 - 1/n)`.
    pub fn update(&mut self, winner: &BitString, loser: &BitString, mu: f64) -> Result<()> {
        let n = self.len();
        for x in [winner, loser] {
            if x.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: x.len(),
                });
            }
        }
        if mu.is_nan() || mu < 1.0 {
            return Err(Error::param("mu", format!("must be >= 1, got {mu}")));
        }
        self.apply_update(winner, loser, 1.0 / mu);
        Ok(())
    }

    /// Unchecked update with precomputed step `1/mu`; dimensions must match.
    #[inline]
    pub(crate) fn apply_update(&mut self, winner: &BitString, loser: &BitString, step: f64) {
        let (lower, upper) = (self.lower, self.upper);
        for ((p, &w), &l) in self.freqs.iter_mut().zip(&winner.0).zip(&loser.0) {
            if w != l {
                let moved = if w { *p + step } else { *p - step };
                *p = moved.max(lower).min(upper);
            }
        }
    }
}
