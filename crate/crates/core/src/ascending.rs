//! Ascending-factorization counters, the non-prime count `W_n` and `pi(x)`.
//!
//! Each class is counted with multiplicity over factor tuples ordered so that
//! permutations are not counted twice: `k*l` with `3 <= k <= l`, `k²*l` with
//! `l >= k`, and so on. `W_n`, the number of distinct composites among
//! `U_0..=U_n`, is then `pi(x) = M_n - W_n + 1` where the `+1` is the prime 2.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::oracle::SieveTable;
use crate::sequences::{element_at, eta, m_count, sigma, sigma_int};

/// Shape of a composite class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompositePattern {
    /// `k*l`, odd `3 <= k <= l`.
    KL,
    /// `k²*l`, odd `3 <= k <= l`.
    KKL,
    /// `k^j`, odd `k >= 3`.
    KPow(u32),
    /// `k^j*l`, odd `3 <= k <= l`.
    KPowL(u32),
    /// `k1*k2*l` with primes `k1 < k2` and odd `l >= k2`.
    TwoPrimeL,
    /// Odd squarefree numbers with exactly `r` prime factors.
    Multi(u32),
}

impl fmt::Display for CompositePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositePattern::KL => write!(f, "kl"),
            CompositePattern::KKL => write!(f, "kkl"),
            CompositePattern::KPow(j) => write!(f, "kpow:{j}"),
            CompositePattern::KPowL(j) => write!(f, "kpowl:{j}"),
            CompositePattern::TwoPrimeL => write!(f, "k1k2l"),
            CompositePattern::Multi(r) => write!(f, "multi:{r}"),
        }
    }
}

impl FromStr for CompositePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let arg = |v: &str, min: u32| -> Result<u32> {
            let j: u32 = v
                .parse()
                .map_err(|_| Error::Usage(format!("bad exponent in class {s:?}")))?;
            if j < min {
                return Err(Error::Usage(format!("class {s:?} needs a value >= {min}")));
            }
            Ok(j)
        };
        match s.split_once(':') {
            None => match s {
                "kl" => Ok(CompositePattern::KL),
                "kkl" => Ok(CompositePattern::KKL),
                "k1k2l" => Ok(CompositePattern::TwoPrimeL),
                _ => Err(Error::Usage(format!("unknown composite class {s:?}"))),
            },
            Some(("kpow", v)) => Ok(CompositePattern::KPow(arg(v, 1)?)),
            Some(("kpowl", v)) => Ok(CompositePattern::KPowL(arg(v, 1)?)),
            Some(("multi", v)) => Ok(CompositePattern::Multi(arg(v, 2)?)),
            _ => Err(Error::Usage(format!("unknown composite class {s:?}"))),
        }
    }
}

/// Largest `r` with `r^j <= u`.
pub fn iroot(u: u64, j: u32) -> Result<u64> {
    if j == 0 {
        return Err(domain!("root of degree 0"));
    }
    if j == 1 || u < 2 {
        return Ok(u);
    }
    // 2^(64/j + 1) bounds the root from above.
    let mut lo = 1u64;
    let mut hi = u.min(1u64 << (64 / j + 1).min(63));
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        match mid.checked_pow(j) {
            Some(v) if v <= u => lo = mid,
            _ => hi = mid - 1,
        }
    }
    Ok(lo)
}

/// Largest odd `k` with `k² <= U_n`; the upper bound of the `k` sums.
pub fn chi(n: u64) -> Result<u64> {
    let last = element_at(n)?;
    let root = iroot(last, 2)?;
    if root < 3 {
        return Err(domain!("chi needs U_n >= 9, got index {n}"));
    }
    sigma_int(root)
}

fn add(acc: u64, v: u64) -> Result<u64> {
    acc.checked_add(v)
        .ok_or_else(|| Error::Range("count exceeds u64".into()))
}

/// Pairs `3 <= k <= l`, both odd, with `k*l <= U_n`:
/// `sum over odd k <= chi(n) of floor((U_n - k²) / 2k) + 1`.
pub fn count_kl(n: u64) -> Result<u64> {
    let last = element_at(n)?;
    if last < 9 {
        return Ok(0);
    }
    let bound = chi(n)?;
    let mut total = 0u64;
    for k in (3..=bound).step_by(2) {
        total = add(total, (last - k * k) / (2 * k) + 1)?;
    }
    Ok(total)
}

/// Pairs `3 <= k <= l`, both odd, with `k^j*l <= U_n`:
/// `sum over odd k with k^(j+1) <= U_n of floor((U_n - k^(j+1)) / 2k^j) + 1`.
pub fn count_kpowl(j: u32, n: u64) -> Result<u64> {
    if j == 0 {
        return Err(domain!("k^j*l needs j >= 1"));
    }
    let last = element_at(n)?;
    let mut total = 0u64;
    let mut k = 3u64;
    loop {
        let Some(base) = k.checked_pow(j) else { break };
        let Some(lead) = base.checked_mul(k).filter(|&v| v <= last) else {
            break;
        };
        total = add(total, (last - lead) / (2 * base) + 1)?;
        k += 2;
    }
    Ok(total)
}

/// Pairs `3 <= k <= l`, both odd, with `k²*l <= U_n`.
pub fn count_kkl(n: u64) -> Result<u64> {
    count_kpowl(2, n)
}

/// The printed square-times-odd sum, evaluated verbatim:
/// `sum over odd k <= chi(n) of floor(n/k² + xi(k)/k²)` with
/// `xi(k) = (3 - k²)/2`.
///
/// The floor reduces to `floor((U_n - k²) / 2k²)`, which counts every odd
/// `l >= 3` with `k²*l <= U_n` rather than only `l >= k`. It agrees with
/// [`count_kkl`] up to `U_n = 73` and overcounts from `75 = 5²*3` on.
pub fn count_kkl_paper(n: u64) -> Result<u64> {
    let last = element_at(n)?;
    if last < 9 {
        return Ok(0);
    }
    let bound = chi(n)?;
    let mut total = 0u64;
    for k in (3..=bound).step_by(2) {
        let k2 = k * k;
        // 2n + 3 - k² == U_n - k² >= 0 here.
        total = add(total, (last - k2) / (2 * k2))?;
    }
    Ok(total)
}

/// Odd bases `k >= 3` with `k^j <= U_n`: `floor((U_n^(1/j) - 3) / 2) + 1`.
pub fn count_kpow(j: u32, n: u64) -> Result<u64> {
    if j == 0 {
        return Err(domain!("k^j needs j >= 1"));
    }
    let root = iroot(element_at(n)?, j)?;
    Ok(if root < 3 { 0 } else { (root - 3) / 2 + 1 })
}

/// How `W_n` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// The alternating combination of class counts.
    PaperEq6,
    /// Distinct odd composites read off the sieve.
    OracleExact,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::PaperEq6 => "paper",
            Strategy::OracleExact => "oracle",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "paper_eq6" => Ok(Strategy::PaperEq6),
            "oracle" | "oracle_exact" => Ok(Strategy::OracleExact),
            _ => Err(Error::Usage(format!("unknown strategy {s:?}"))),
        }
    }
}

fn odd_primes_upto(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let len = (limit as usize - 1) / 2; // index i <-> 2i + 3
    let mut composite = vec![false; len];
    let mut i = 0;
    while i < len {
        let p = 2 * i + 3;
        if p * p > limit as usize {
            break;
        }
        if !composite[i] {
            let mut j = (p * p - 3) / 2;
            while j < len {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    (0..len)
        .filter(|&i| !composite[i])
        .map(|i| 2 * i as u64 + 3)
        .collect()
}

/// Evaluates the alternating class combination
///
/// ```text
/// W ≈ kl - kkl + kpow:3 - kpowl:3 + kpow:4 - ... - k1k2l - 2 multi:3 - 3 multi:4 - ...
/// ```
///
/// for any `U_n` up to the bound it was built for. The `k^j` rows continue
/// until `3^(j+1) > U_n`; the `multi:r` rows until the class is empty. The
/// result is not exact: factors of multiplicity above one and products of
/// four or more primes are over- or under-corrected, and the residual against
/// the exact count grows with `n`.
#[derive(Debug, Clone)]
pub struct Eq6Evaluator {
    max_last: u64,
    primes: Vec<u64>,
}

impl Eq6Evaluator {
    pub fn new(max_n: u64) -> Result<Self> {
        let max_last = element_at(max_n)?;
        if max_last / 15 > crate::oracle::DEFAULT_SIEVE_CAP {
            return Err(Error::Resource(format!(
                "class enumeration up to {max_last} needs primes past the cap"
            )));
        }
        Ok(Eq6Evaluator {
            max_last,
            primes: odd_primes_upto(max_last / 15),
        })
    }

    fn two_prime_l(&self, last: u64) -> u64 {
        let mut total = 0;
        for (a, &k1) in self.primes.iter().enumerate() {
            if k1.saturating_mul(k1).saturating_mul(k1) > last {
                break;
            }
            for &k2 in &self.primes[a + 1..] {
                if k1.saturating_mul(k2).saturating_mul(k2) > last {
                    break;
                }
                total += (last / (k1 * k2) - k2) / 2 + 1;
            }
        }
        total
    }

    // Squarefree odd numbers <= last built from `r` primes, the smallest
    // drawn from primes[from..].
    fn multi(&self, r: u32, from: usize, last: u64) -> u64 {
        if r == 1 {
            let lo = from;
            let hi = self.primes.partition_point(|&p| p <= last);
            return hi.saturating_sub(lo) as u64;
        }
        let mut total = 0;
        for i in from..self.primes.len() {
            let p = self.primes[i];
            // p * next^(r-1) must fit: a cheap bound is p^r.
            match p.checked_pow(r) {
                Some(v) if v <= last => {}
                _ => break,
            }
            total += self.multi(r - 1, i + 1, last / p);
        }
        total
    }

    /// Returns `W` and the raw class counts that went into it.
    pub fn evaluate(&self, n: u64) -> Result<(i64, BTreeMap<String, u64>)> {
        let last = element_at(n)?;
        if last > self.max_last {
            return Err(domain!("index {n} is beyond the evaluator bound"));
        }
        let mut terms = BTreeMap::new();
        let mut w: i64 = 0;
        let mut term = |pattern: CompositePattern, sign: i64, v: u64| {
            terms.insert(pattern.to_string(), v);
            w += sign * v as i64;
        };

        term(CompositePattern::KL, 1, count_kl(n)?);
        let mut j = 2u32;
        while 3u64.checked_pow(j + 1).is_some_and(|v| v <= last) {
            let pattern = if j == 2 {
                CompositePattern::KKL
            } else {
                CompositePattern::KPowL(j)
            };
            term(pattern, -1, count_kpowl(j, n)?);
            term(CompositePattern::KPow(j + 1), 1, count_kpow(j + 1, n)?);
            j += 1;
        }
        term(CompositePattern::TwoPrimeL, -1, self.two_prime_l(last));
        let mut r = 3u32;
        loop {
            let c = self.multi(r, 0, last);
            if c == 0 {
                break;
            }
            term(CompositePattern::Multi(r), -(r as i64 - 1), c);
            r += 1;
        }
        Ok((w, terms))
    }
}

/// `W_n` and the class counts behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WAssembly {
    pub w: i64,
    pub class_counts: BTreeMap<String, u64>,
}

/// Non-primes among `U_0..=U_n`.
pub fn assemble_w(n: u64, strategy: Strategy) -> Result<WAssembly> {
    match strategy {
        Strategy::PaperEq6 => {
            let (w, class_counts) = Eq6Evaluator::new(n)?.evaluate(n)?;
            Ok(WAssembly { w, class_counts })
        }
        Strategy::OracleExact => {
            let sieve = SieveTable::build(element_at(n)?)?;
            assemble_w_with(n, strategy, &sieve)
        }
    }
}

/// As [`assemble_w`], reading the exact count from a prebuilt sieve.
pub fn assemble_w_with(n: u64, strategy: Strategy, sieve: &SieveTable) -> Result<WAssembly> {
    match strategy {
        Strategy::PaperEq6 => assemble_w(n, strategy),
        Strategy::OracleExact => Ok(WAssembly {
            w: sieve.odd_composites(element_at(n)?)? as i64,
            class_counts: BTreeMap::new(),
        }),
    }
}

fn serialize_x<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.fract() == 0.0 && *x >= 0.0 && *x < 9.007_199_254_740_992e15 {
        s.serialize_u64(*x as u64)
    } else {
        s.serialize_f64(*x)
    }
}

/// Every quantity in `pi = m_n - w_n + m_corr`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiBreakdown {
    #[serde(serialize_with = "serialize_x")]
    pub x: f64,
    /// `eta(sigma(x))`; absent for `2 <= x < 3`.
    pub n: Option<u64>,
    pub strategy: Strategy,
    pub m_n: u64,
    pub class_counts: BTreeMap<String, u64>,
    pub w_n: i64,
    pub m_corr: u64,
    pub pi: i64,
}

fn pi_breakdown(x: f64, strategy: Strategy, w: impl FnOnce(u64) -> Result<WAssembly>) -> Result<PiBreakdown> {
    if !x.is_finite() || x < 2.0 {
        return Err(domain!("pi needs x >= 2, got {x}"));
    }
    if x < 3.0 {
        return Ok(PiBreakdown {
            x,
            n: None,
            strategy,
            m_n: 0,
            class_counts: BTreeMap::new(),
            w_n: 0,
            m_corr: 1,
            pi: 1,
        });
    }
    let n = eta(sigma(x)?)?;
    let m_n = m_count(x)?;
    let WAssembly { w, class_counts } = w(n)?;
    Ok(PiBreakdown {
        x,
        n: Some(n),
        strategy,
        m_n,
        class_counts,
        w_n: w,
        m_corr: 1,
        pi: m_n as i64 - w + 1,
    })
}

/// `pi(x) = M_n - W_n + 1`.
pub fn pi_of(x: f64, strategy: Strategy) -> Result<PiBreakdown> {
    pi_breakdown(x, strategy, |n| assemble_w(n, strategy))
}

/// As [`pi_of`], reusing a sieve that covers `x`.
pub fn pi_of_with(x: f64, strategy: Strategy, sieve: &SieveTable) -> Result<PiBreakdown> {
    pi_breakdown(x, strategy, |n| assemble_w_with(n, strategy, sieve))
}
