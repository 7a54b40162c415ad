//! Naive reference implementations shared by the integration tests.
#![allow(dead_code)]

use smartcga::{BenchmarkKind, BenchmarkSpec, BitString};

/// `x` as a string of '0'/'1'.
pub fn text(x: &BitString) -> String {
    x.bits()
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

/// Every string of length `n`, via the binary digits of 0..2^n.
pub fn all_strings(n: usize) -> impl Iterator<Item = BitString> {
    (0u64..1 << n).map(move |v| {
        let s: String = (0..n)
            .map(|j| if (v >> j) & 1 == 1 { '1' } else { '0' })
            .collect();
        BitString::parse(&s).unwrap()
    })
}

pub fn naive_one_max(s: &str) -> usize {
    s.matches('1').count()
}

pub fn naive_leading_ones(s: &str) -> usize {
    s.find('0').unwrap_or(s.len())
}

pub fn naive_jump(s: &str, k: usize) -> usize {
    let n = s.len();
    let ones = naive_one_max(s);
    if ones == n || ones + k <= n {
        ones + k
    } else {
        n - ones
    }
}

/// Scan pairs left to right: each "11" pair counts 2; the first pair that is
/// not "11" adds 1 if it is "00" and ends the scan.
pub fn naive_dlb(s: &str) -> usize {
    let mut total = 0;
    let mut i = 0;
    while i + 1 < s.len() {
        match &s[i..i + 2] {
            "11" => total += 2,
            "00" => return total + 1,
            _ => return total,
        }
        i += 2;
    }
    total
}

pub fn naive(spec: &BenchmarkSpec, x: &BitString) -> usize {
    let s = text(x);
    match spec.kind() {
        BenchmarkKind::OneMax => naive_one_max(&s),
        BenchmarkKind::LeadingOnes => naive_leading_ones(&s),
        BenchmarkKind::Jump => naive_jump(&s, spec.k().unwrap()),
        BenchmarkKind::Dlb => naive_dlb(&s),
    }
}

/// Type-7 quantile computed directly from its definition: h = (m-1)q,
/// interpolate between the floor(h)-th and ceil(h)-th order statistics.
pub fn median(values: &[u64]) -> f64 {
    let mut v: Vec<f64> = values.iter().map(|&x| x as f64).collect();
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * 0.5;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}
