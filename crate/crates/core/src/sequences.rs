//! The main sequence of odd numbers `U_n = 3 + 2n`, its index arithmetic,
//! and wheel-style T-series of odds coprime to a divisor set.
//!
//! Every prime except 2 is an element of the main sequence. A T-series keeps
//! only the elements coprime to a set of small odd primes; it is periodic
//! with period `2 * prod(divisors)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest index whose element still fits in a `u64`.
pub const MAX_INDEX: u64 = (u64::MAX - 3) / 2;

/// Wheels whose period exceeds this are rejected; building one enumerates a
/// full period.
pub const MAX_WHEEL_PERIOD: u64 = 1 << 25;

/// Returns `U_n = 3 + 2n`.
pub fn element_at(n: u64) -> Result<u64> {
    n.checked_mul(2)
        .and_then(|v| v.checked_add(3))
        .ok_or_else(|| Error::Range(format!("element at index {n} exceeds u64")))
}

/// Index of an element of the main sequence, `(u - 3) / 2`.
pub fn eta(u: u64) -> Result<u64> {
    if u < 3 || u % 2 == 0 {
        return Err(domain!("{u} is not an element of the main sequence"));
    }
    Ok((u - 3) / 2)
}

/// Largest odd `u >= 3` with `u <= x`.
pub fn sigma(x: f64) -> Result<u64> {
    if !x.is_finite() || x < 3.0 {
        return Err(domain!("sigma requires x >= 3, got {x}"));
    }
    // 2^64 as f64; every f64 below it floors to a representable u64.
    if x >= 18_446_744_073_709_551_616.0 {
        return Err(Error::Range(format!("{x} exceeds u64")));
    }
    sigma_int(x.floor() as u64)
}

/// Integer form of [`sigma`].
pub fn sigma_int(x: u64) -> Result<u64> {
    if x < 3 {
        return Err(domain!("sigma requires x >= 3, got {x}"));
    }
    Ok(if x % 2 == 0 { x - 1 } else { x })
}

/// Number of elements of the main sequence not exceeding `x`.
pub fn m_count(x: f64) -> Result<u64> {
    Ok((sigma(x)? - 3) / 2 + 1)
}

/// Index of the last element not exceeding `x`, i.e. `eta(sigma(x))`.
pub fn index_at(x: f64) -> Result<u64> {
    eta(sigma(x)?)
}

pub(crate) fn is_prime_small(u: u64) -> bool {
    if u < 2 {
        return false;
    }
    if u % 2 == 0 {
        return u == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= u {
        if u % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A T-series: the odd numbers greater than `max(divisors)` that are coprime
/// to every divisor.
///
/// `seeds` holds the first period of the stream, so element `i` of the
/// series is `seeds[i % len] + (i / len) * period`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelSpec {
    divisors: Vec<u64>,
    period: u64,
    offsets: Vec<u64>,
    seeds: Vec<u64>,
}

impl WheelSpec {
    /// Builds the wheel for a set of distinct odd primes.
    ///
    /// The divisors may be given in any order; duplicates, even numbers and
    /// non-primes are rejected.
    pub fn build(divisors: &[u64]) -> Result<Self> {
        if divisors.is_empty() {
            return Err(domain!("wheel needs at least one divisor"));
        }
        let mut sorted = divisors.to_vec();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(domain!("repeated divisor {}", pair[0]));
            }
        }
        let mut period = 2u64;
        for &d in &sorted {
            if d % 2 == 0 {
                return Err(domain!("even divisor {d}"));
            }
            if !is_prime_small(d) {
                return Err(domain!("divisor {d} is not prime"));
            }
            period = period
                .checked_mul(d)
                .filter(|&p| p <= MAX_WHEEL_PERIOD)
                .ok_or_else(|| {
                    Error::Resource(format!("wheel period exceeds {MAX_WHEEL_PERIOD}"))
                })?;
        }

        let start = sorted[sorted.len() - 1] + 2;
        let seeds: Vec<u64> = (start..start + period)
            .step_by(2)
            .filter(|u| sorted.iter().all(|d| u % d != 0))
            .collect();
        let mut offsets: Vec<u64> = seeds.iter().map(|s| s % period).collect();
        offsets.sort_unstable();

        Ok(WheelSpec {
            divisors: sorted,
            period,
            offsets,
            seeds,
        })
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// Residues of the stream modulo the period, ascending.
    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn seeds(&self) -> &[u64] {
        &self.seeds
    }

    /// Differences between consecutive elements over one period; the last gap
    /// wraps around to the first seed of the next period.
    pub fn gaps(&self) -> Vec<u64> {
        let k = self.seeds.len();
        (0..k)
            .map(|i| {
                if i + 1 < k {
                    self.seeds[i + 1] - self.seeds[i]
                } else {
                    self.seeds[0] + self.period - self.seeds[i]
                }
            })
            .collect()
    }

    /// Iterator over the whole series, stopping before overflow.
    pub fn iter(&self) -> WheelIter<'_> {
        WheelIter {
            spec: self,
            base: 0,
            pos: 0,
        }
    }

    /// All elements `<= limit`, strictly increasing.
    pub fn stream(&self, limit: u64) -> Vec<u64> {
        self.iter().take_while(|&u| u <= limit).collect()
    }
}

pub struct WheelIter<'a> {
    spec: &'a WheelSpec,
    base: u64,
    pos: usize,
}

impl Iterator for WheelIter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let seed = *self.spec.seeds.get(self.pos)?;
        let value = seed.checked_add(self.base)?;
        self.pos += 1;
        if self.pos == self.spec.seeds.len() {
            self.pos = 0;
            self.base = self.base.saturating_add(self.spec.period);
        }
        Some(value)
    }
}

/// Free-function form of [`WheelSpec::build`].
pub fn wheel_build(divisors: &[u64]) -> Result<WheelSpec> {
    WheelSpec::build(divisors)
}

/// Free-function form of [`WheelSpec::stream`].
pub fn wheel_stream(spec: &WheelSpec, limit: u64) -> Vec<u64> {
    spec.stream(limit)
}
