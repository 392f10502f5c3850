//! Closed-form counters ("Z-functions") for p-composites of the main sequence.
//!
//! For `p >= 5` a p-composite is `p * m` with `m` odd, `3 ∤ m` and `m >= p`.
//! Its index is `eta(p * m)`, so consecutive multiples `m, m + 2` sit `p`
//! indices apart and every third one is skipped because `3 | m`. The counter
//! is therefore a threshold at `eta(p²)`, a period of `p` indices and a mod-3
//! phase correction:
//!
//! ```text
//! count(p, n) = 1[n >= t] * (1 + q - floor((q + 3c) / 3)),   q = floor((n - t) / p)
//! ```
//!
//! with `3c = 1` when `p ≡ 2 (mod 3)` and `3c = 2` when `p ≡ 1 (mod 3)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::sequences::{element_at, is_prime_small};

/// Number of odd multiples of 3 in `U_0..=U_n` other than 3 itself.
pub fn count_3(n: u64) -> u64 {
    n / 3
}

/// Mod-3 phase of a [`ZCounter`]; the numerator of `c` over 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    OneThird,
    TwoThirds,
}

impl Phase {
    fn numerator(self) -> u64 {
        match self {
            Phase::OneThird => 1,
            Phase::TwoThirds => 2,
        }
    }
}

/// Closed-form p-composite counter for a prime `p >= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZCounter {
    p: u64,
    threshold: u64,
    phase: Phase,
}

impl ZCounter {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || !is_prime_small(p) {
            return Err(domain!("p-composite counter needs a prime p >= 5, got {p}"));
        }
        let square = p
            .checked_mul(p)
            .ok_or_else(|| domain!("p = {p} is too large"))?;
        let phase = if p % 3 == 1 {
            Phase::TwoThirds
        } else {
            Phase::OneThird
        };
        Ok(ZCounter {
            p,
            threshold: (square - 3) / 2,
            phase,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `eta(p²)`, the index of the first p-composite.
    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    /// Index step between consecutive multiples `p * m`, `p * (m + 2)`.
    pub fn period(&self) -> u64 {
        self.p
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn count(&self, n: u64) -> u64 {
        if n < self.threshold {
            return 0;
        }
        let q = (n - self.threshold) / self.p;
        1 + q - (q + self.phase.numerator()) / 3
    }

    /// The p-composites `<= U_n`, ascending.
    pub fn enumerate(&self, n: u64) -> Result<Vec<u64>> {
        let last = element_at(n)?;
        let mut out = Vec::new();
        let mut m = self.p;
        while let Some(v) = self.p.checked_mul(m).filter(|&v| v <= last) {
            if m % 3 != 0 {
                out.push(v);
            }
            m += 2;
        }
        Ok(out)
    }
}

/// The oracle-matching counter for any prime `p >= 5`.
pub fn count_p_corrected(p: u64, n: u64) -> Result<u64> {
    Ok(ZCounter::new(p)?.count(n))
}

/// The printed closed forms for `p ∈ {5, 7, 11}`, evaluated verbatim.
///
/// The `p = 5` form lacks the leading `1 + q` term of the other two and so
/// undercounts; it is kept as printed for comparison.
pub fn count_p_paper(p: u64, n: u64) -> Result<u64> {
    let threshold = match p {
        5 => 11,
        7 => 23,
        11 => 59,
        _ => {
            return Err(domain!(
                "printed Z-function exists only for p in {{5, 7, 11}}, got {p}"
            ))
        }
    };
    if n < threshold {
        return Ok(0);
    }
    let q = (n - threshold) / p;
    // floor(q/3 + b/3) == (q + b) / 3 for non-negative integers.
    Ok(match p {
        5 => (q + 1) / 3,
        7 => 1 + q - (q + 2) / 3,
        _ => 1 + q - (q + 1) / 3,
    })
}

/// Explicit list of p-composites `<= U_n`.
pub fn enumerate_p_composites(p: u64, n: u64) -> Result<Vec<u64>> {
    ZCounter::new(p)?.enumerate(n)
}
