//! Pseudo-Boolean test functions: OneMax, LeadingOnes, Jump and DeceptiveLeadingBlocks.
//!
//! All four are maximized, take their unique maximum at the all-ones string,
//! and return integer fitness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::BitString;

/// Number of one-bits.
pub fn one_max(x: &BitString) -> usize {
    x.count_ones()
}

/// Length of the longest all-ones prefix.
pub fn leading_ones(x: &BitString) -> usize {
    x.bits().iter().take_while(|&&b| b).count()
}

/// `k + |x|` if `|x| <= n - k` or `|x| = n`, else `n - |x|`.
pub fn jump(x: &BitString, k: usize) -> Result<usize> {
    let n = x.len();
    if k == 0 || k > n {
        return Err(Error::param(
            "k",
            format!("jump size must lie in [1, {n}], got {k}"),
        ));
    }
    Ok(jump_unchecked(x.count_ones(), n, k))
}

#[inline]
fn jump_unchecked(ones: usize, n: usize, k: usize) -> usize {
    if ones <= n - k || ones == n {
        k + ones
    } else {
        n - ones
    }
}

/// DeceptiveLeadingBlocks over blocks of two bits.
pub fn dlb(x: &BitString) -> Result<usize> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::param(
            "n",
            format!("DLB needs an even length, got {}", x.len()),
        ));
    }
    Ok(dlb_unchecked(x.bits()))
}

#[inline]
fn dlb_unchecked(bits: &[bool]) -> usize {
    let mut value = 0;
    for block in bits.chunks_exact(2) {
        match (block[0], block[1]) {
            (true, true) => value += 2,
            (false, false) => return value + 1,
            _ => return value,
        }
    }
    value
}

/// Something the cGA can maximize.
pub trait Objective: Sync {
    fn dimension(&self) -> usize;

    /// True (noise-free) fitness. `x` has length [`dimension`](Self::dimension).
    fn fitness(&self, x: &BitString) -> usize;

    /// The global maximum, if the run should stop once it is sampled.
    fn optimum_value(&self) -> Option<usize>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkKind {
    OneMax,
    LeadingOnes,
    Jump,
    Dlb,
}

impl BenchmarkKind {
    pub fn name(self) -> &'static str {
        match self {
            BenchmarkKind::OneMax => "onemax",
            BenchmarkKind::LeadingOnes => "leadingones",
            BenchmarkKind::Jump => "jump",
            BenchmarkKind::Dlb => "dlb",
        }
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "onemax" => Ok(BenchmarkKind::OneMax),
            "leadingones" => Ok(BenchmarkKind::LeadingOnes),
            "jump" => Ok(BenchmarkKind::Jump),
            "dlb" => Ok(BenchmarkKind::Dlb),
            other => Err(Error::param(
                "benchmark",
                format!("unknown benchmark `{other}`"),
            )),
        }
    }
}

/// A benchmark instance: function kind plus dimension (and jump size for Jump).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    kind: BenchmarkKind,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
}

impl BenchmarkSpec {
    /// Build and validate an instance. `k` is required for Jump and ignored otherwise.
    pub fn new(kind: BenchmarkKind, n: usize, k: Option<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let k = match kind {
            BenchmarkKind::Jump => {
                let k = k.ok_or_else(|| Error::param("k", "Jump requires a jump size"))?;
                if k == 0 || k > n {
                    return Err(Error::param(
                        "k",
                        format!("jump size must lie in [1, {n}], got {k}"),
                    ));
                }
                Some(k)
            }
            BenchmarkKind::Dlb => {
                if !n.is_multiple_of(2) {
                    return Err(Error::param(
                        "n",
                        format!("DLB needs an even length, got {n}"),
                    ));
                }
                None
            }
            _ => None,
        };
        Ok(Self { kind, n, k })
    }

    pub fn one_max(n: usize) -> Result<Self> {
        Self::new(BenchmarkKind::OneMax, n, None)
    }

    pub fn leading_ones(n: usize) -> Result<Self> {
        Self::new(BenchmarkKind::LeadingOnes, n, None)
    }

    pub fn jump(n: usize, k: usize) -> Result<Self> {
        Self::new(BenchmarkKind::Jump, n, Some(k))
    }

    pub fn dlb(n: usize) -> Result<Self> {
        Self::new(BenchmarkKind::Dlb, n, None)
    }

    pub fn kind(&self) -> BenchmarkKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// The global maximum value: `n + k` for Jump, `n` otherwise.
    pub fn max_fitness(&self) -> usize {
        self.n + self.k.unwrap_or(0)
    }

    /// Evaluate `x`, checking its length first.
    pub fn evaluate(&self, x: &BitString) -> Result<usize> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(self.fitness(x))
    }

    /// Whether `x` is the global optimum (the all-ones string for every kind).
    pub fn is_optimum(&self, x: &BitString) -> bool {
        x.len() == self.n && x.is_all_ones()
    }

    /// Per-run generation cap used for fixed-population cGA runs:
    /// `n^5` (OneMax, LeadingOnes), `n^(k/2)` (Jump), `10 n^5` (DLB).
    pub fn default_generation_cap(&self) -> u64 {
        let n = self.n as f64;
        let cap = match self.kind {
            BenchmarkKind::OneMax | BenchmarkKind::LeadingOnes => n.powi(5),
            BenchmarkKind::Jump => n.powf(self.k.unwrap_or(0) as f64 / 2.0),
            BenchmarkKind::Dlb => 10.0 * n.powi(5),
        };
        (cap.round() as u64).max(1)
    }
}

impl Objective for BenchmarkSpec {
    fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    fn fitness(&self, x: &BitString) -> usize {
        match self.kind {
            BenchmarkKind::OneMax => one_max(x),
            BenchmarkKind::LeadingOnes => leading_ones(x),
            BenchmarkKind::Jump => jump_unchecked(x.count_ones(), self.n, self.k.unwrap_or(1)),
            BenchmarkKind::Dlb => dlb_unchecked(x.bits()),
        }
    }

    fn optimum_value(&self) -> Option<usize> {
        Some(self.max_fitness())
    }
}

impl fmt::Display for BenchmarkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "{}(n={}, k={})", self.kind, self.n, k),
            None => write!(f, "{}(n={})", self.kind, self.n),
        }
    }
}
