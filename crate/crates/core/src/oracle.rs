//! Independent ground truth for the closed-form counters.
//!
//! Nothing here calls into `sequences`, `zfuncs`, `ascending` or `primegen`;
//! only the [`CompositePattern`] descriptor is shared. The sieve stores one
//! bit per odd number plus a running popcount per 64-bit word, so `pi(x)` is
//! a constant-time lookup once the table is built.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ascending::CompositePattern;
use crate::error::{domain, Error, Result};

/// Default upper bound accepted by [`SieveTable::build`].
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

const MAGIC: &[u8; 4] = b"ODSQ";
const FORMAT_VERSION: u32 = 1;

/// Primality bitmap over the odd numbers in `[1, limit]`.
///
/// Bit `i` stands for `2i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveTable {
    limit: u64,
    words: Vec<u64>,
    // Number of odd primes in words[..w].
    ranks: Vec<u64>,
}

impl SieveTable {
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_cap(limit, DEFAULT_SIEVE_CAP)
    }

    pub fn build_with_cap(limit: u64, cap: u64) -> Result<Self> {
        if limit < 2 {
            return Err(domain!("sieve limit must be >= 2, got {limit}"));
        }
        if limit > cap {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds the configured cap {cap}"
            )));
        }
        let bits = (limit as usize + 1) / 2;
        let mut words = vec![u64::MAX; bits.div_ceil(64)];
        let clear = |words: &mut [u64], i: usize| words[i / 64] &= !(1u64 << (i % 64));
        clear(&mut words, 0);
        // Bits past the limit.
        for i in bits..words.len() * 64 {
            clear(&mut words, i);
        }
        let mut i = 1usize;
        loop {
            let p = 2 * i + 1;
            if p * p > limit as usize {
                break;
            }
            if words[i / 64] >> (i % 64) & 1 == 1 {
                let mut j = (p * p) / 2;
                while j < bits {
                    clear(&mut words, j);
                    j += p;
                }
            }
            i += 1;
        }
        Ok(Self::from_words(limit, words))
    }

    fn from_words(limit: u64, words: Vec<u64>) -> Self {
        let mut ranks = Vec::with_capacity(words.len() + 1);
        let mut acc = 0u64;
        ranks.push(0);
        for w in &words {
            acc += w.count_ones() as u64;
            ranks.push(acc);
        }
        SieveTable {
            limit,
            words,
            ranks,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check(&self, x: u64) -> Result<()> {
        if x > self.limit {
            return Err(Error::Resource(format!(
                "{x} is beyond the sieve limit {}",
                self.limit
            )));
        }
        Ok(())
    }

    pub fn is_prime(&self, u: u64) -> Result<bool> {
        self.check(u)?;
        if u % 2 == 0 {
            return Ok(u == 2);
        }
        let i = (u / 2) as usize;
        Ok(self.words[i / 64] >> (i % 64) & 1 == 1)
    }

    /// Number of odd primes `<= x`.
    pub fn odd_pi(&self, x: u64) -> Result<u64> {
        self.check(x)?;
        if x < 3 {
            return Ok(0);
        }
        let last = ((x - 1) / 2) as usize;
        let w = last / 64;
        let b = last % 64;
        let mask = if b == 63 { u64::MAX } else { (1u64 << (b + 1)) - 1 };
        Ok(self.ranks[w] + (self.words[w] & mask).count_ones() as u64)
    }

    /// Exact `pi(x)`.
    pub fn pi(&self, x: u64) -> Result<u64> {
        if x < 2 {
            return Ok(0);
        }
        Ok(1 + self.odd_pi(x)?)
    }

    /// Odd composites in `[3, u]`.
    pub fn odd_composites(&self, u: u64) -> Result<u64> {
        if u < 3 {
            return Ok(0);
        }
        let odds = (u - 1) / 2;
        Ok(odds - self.odd_pi(u)?)
    }

    /// All primes `<= limit`, including 2.
    pub fn primes(&self) -> Vec<u64> {
        let mut out = vec![2];
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as u64;
                out.push(2 * (w as u64 * 64 + b) + 1);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Writes `ODSQ`, a `u32` format version, the `u64` limit and the raw
    /// bitmap words, all little-endian.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&self.limit.to_le_bytes())?;
        for word in &self.words {
            w.write_all(&word.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Io("not an ODSQ sieve dump".into()));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        let version = u32::from_le_bytes(b4);
        if version != FORMAT_VERSION {
            return Err(Error::Io(format!("unsupported sieve dump version {version}")));
        }
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)?;
        let limit = u64::from_le_bytes(b8);
        if limit < 2 {
            return Err(Error::Io(format!("corrupt sieve dump: limit {limit}")));
        }
        let n_words = ((limit as usize + 1) / 2).div_ceil(64);
        let mut words = Vec::with_capacity(n_words);
        for _ in 0..n_words {
            r.read_exact(&mut b8)?;
            words.push(u64::from_le_bytes(b8));
        }
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(Error::Io("trailing bytes after sieve dump".into()));
        }
        Ok(Self::from_words(limit, words))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.write_to(BufWriter::new(File::create(path)?))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

pub fn sieve_build(limit: u64) -> Result<SieveTable> {
    SieveTable::build(limit)
}

pub fn oracle_pi(table: &SieveTable, x: u64) -> Result<u64> {
    if x < 2 {
        return Err(domain!("oracle_pi needs x >= 2, got {x}"));
    }
    table.pi(x)
}

/// Prime factorization with strictly ascending primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AscendingFactorization {
    pub factors: Vec<(u64, u32)>,
}

impl AscendingFactorization {
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, m)| p.pow(m))
            .product()
    }

    pub fn distinct(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }
}

pub fn factorize_ascending(mut u: u64) -> Result<AscendingFactorization> {
    if u < 2 {
        return Err(domain!("factorization needs u >= 2, got {u}"));
    }
    let mut factors = Vec::new();
    let mut push = |p: u64, u: &mut u64| {
        let mut m = 0;
        while *u % p == 0 {
            *u /= p;
            m += 1;
        }
        if m > 0 {
            factors.push((p, m));
        }
    };
    push(2, &mut u);
    let mut d = 3u64;
    while d.saturating_mul(d) <= u {
        push(d, &mut u);
        d += 2;
    }
    if u > 1 {
        factors.push((u, 1));
    }
    Ok(AscendingFactorization { factors })
}

fn is_prime_trial(u: u64) -> bool {
    u >= 2 && factorize_ascending(u).map(|f| f.factors == [(u, 1)]).unwrap_or(false)
}

fn last_element(n: u64) -> Result<u64> {
    n.checked_mul(2)
        .and_then(|v| v.checked_add(3))
        .ok_or_else(|| Error::Range(format!("index {n} overflows")))
}

/// Largest index the brute-force enumerators accept.
pub const MAX_ENUM_INDEX: u64 = 50_000_000;

/// Cumulative brute-force counts for every index `0..=max_n`.
///
/// Each pattern is counted with multiplicity over its own tuple definition:
/// `KL` pairs `3 <= k <= l` odd with `k*l <= U_n`, `KKL` pairs with
/// `k²*l`, `KPow(j)` odd bases `k >= 3` with `k^j`, `KPowL(j)` pairs with
/// `k^j*l`, `TwoPrimeL` triples of primes `k1 < k2` and odd `l >= k2`, and
/// `Multi(r)` odd squarefree numbers with exactly `r` prime factors.
pub fn class_histogram(pattern: CompositePattern, max_n: u64) -> Result<Vec<u64>> {
    if max_n > MAX_ENUM_INDEX {
        return Err(Error::Resource(format!(
            "enumeration up to index {max_n} exceeds {MAX_ENUM_INDEX}"
        )));
    }
    let top = last_element(max_n)?;
    let mut buckets = vec![0u64; max_n as usize + 1];
    let mut hit = |v: u64| buckets[((v - 3) / 2) as usize] += 1;

    let pairs = |j: u32, hit: &mut dyn FnMut(u64)| {
        let mut k = 3u64;
        while let Some(base) = k.checked_pow(j) {
            if base.saturating_mul(k) > top {
                break;
            }
            let mut l = k;
            while let Some(v) = base.checked_mul(l).filter(|&v| v <= top) {
                hit(v);
                l += 2;
            }
            k += 2;
        }
    };

    match pattern {
        CompositePattern::KL => pairs(1, &mut hit),
        CompositePattern::KKL => pairs(2, &mut hit),
        CompositePattern::KPowL(j) => {
            if j < 1 {
                return Err(domain!("k^j*l needs j >= 1"));
            }
            pairs(j, &mut hit)
        }
        CompositePattern::KPow(j) => {
            if j < 1 {
                return Err(domain!("k^j needs j >= 1"));
            }
            let mut k = 3u64;
            while let Some(v) = k.checked_pow(j).filter(|&v| v <= top) {
                hit(v);
                k += 2;
            }
        }
        CompositePattern::TwoPrimeL => {
            let mut k1 = 3u64;
            while k1.saturating_mul(k1).saturating_mul(k1) <= top {
                if is_prime_trial(k1) {
                    let mut k2 = k1 + 2;
                    while k1.saturating_mul(k2).saturating_mul(k2) <= top {
                        if is_prime_trial(k2) {
                            let mut l = k2;
                            while k1 * k2 * l <= top {
                                hit(k1 * k2 * l);
                                l += 2;
                            }
                        }
                        k2 += 2;
                    }
                }
                k1 += 2;
            }
        }
        CompositePattern::Multi(r) => {
            if r < 2 {
                return Err(domain!("multi-prime class needs r >= 2"));
            }
            let spf = smallest_factor_table(top);
            let mut u = 3u64;
            while u <= top {
                let mut rest = u;
                let mut count = 0u32;
                let mut squarefree = true;
                while rest > 1 {
                    let p = spf[(rest / 2) as usize];
                    rest /= p;
                    if rest % p == 0 {
                        squarefree = false;
                        break;
                    }
                    count += 1;
                }
                if squarefree && count == r {
                    hit(u);
                }
                u += 2;
            }
        }
    }

    let mut acc = 0u64;
    for b in buckets.iter_mut() {
        acc += *b;
        *b = acc;
    }
    Ok(buckets)
}

// Smallest prime factor of each odd number, indexed by u / 2.
fn smallest_factor_table(top: u64) -> Vec<u64> {
    let len = (top / 2 + 1) as usize;
    let mut spf: Vec<u64> = (0..len as u64).map(|i| 2 * i + 1).collect();
    let mut p = 3u64;
    while p * p <= top {
        if spf[(p / 2) as usize] == p {
            let mut m = p * p;
            while m <= top {
                let slot = &mut spf[(m / 2) as usize];
                if *slot == m {
                    *slot = p;
                }
                m += 2 * p;
            }
        }
        p += 2;
    }
    spf
}

/// Exhaustive count of `pattern` instances `<= U_n`.
pub fn oracle_count_class(pattern: CompositePattern, n: u64) -> Result<u64> {
    Ok(*class_histogram(pattern, n)?.last().expect("non-empty"))
}

/// Cumulative counts of p-composites for every index `0..=max_n`.
///
/// For `p = 3` these are the odd multiples of 3 above 3; for `p >= 5` the
/// products `p*m` with `m >= p` odd and `3 ∤ m`.
pub fn p_composite_histogram(p: u64, max_n: u64) -> Result<Vec<u64>> {
    if p < 3 || !is_prime_trial(p) {
        return Err(domain!("p-composites need an odd prime p, got {p}"));
    }
    if max_n > MAX_ENUM_INDEX {
        return Err(Error::Resource(format!(
            "enumeration up to index {max_n} exceeds {MAX_ENUM_INDEX}"
        )));
    }
    let mut out = Vec::with_capacity(max_n as usize + 1);
    let mut acc = 0u64;
    for i in 0..=max_n {
        let u = 2 * i + 3;
        let member = if p == 3 {
            u % 3 == 0 && u > 3
        } else {
            u % p == 0 && u / p >= p && (u / p) % 3 != 0
        };
        if member {
            acc += 1;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Cumulative counts of pairs `(k, l)`, both odd and `>= 3`, with
/// `k²*l <= U_n`, for every index `0..=max_n`.
pub fn square_times_odd_histogram(max_n: u64) -> Result<Vec<u64>> {
    if max_n > MAX_ENUM_INDEX {
        return Err(Error::Resource(format!(
            "enumeration up to index {max_n} exceeds {MAX_ENUM_INDEX}"
        )));
    }
    let top = last_element(max_n)?;
    let mut buckets = vec![0u64; max_n as usize + 1];
    let mut k = 3u64;
    while 3 * k * k <= top {
        let mut l = 3u64;
        while k * k * l <= top {
            buckets[((k * k * l - 3) / 2) as usize] += 1;
            l += 2;
        }
        k += 2;
    }
    let mut acc = 0;
    for b in buckets.iter_mut() {
        acc += *b;
        *b = acc;
    }
    Ok(buckets)
}

/// Distinct odd composites `<= U_n`, counted by factorizing each element.
pub fn odd_composites_by_factoring(n: u64) -> Result<u64> {
    let top = last_element(n)?;
    let mut c = 0;
    let mut u = 9u64;
    while u <= top {
        let f = factorize_ascending(u)?;
        if f.factors != [(u, 1)] {
            c += 1;
        }
        u += 2;
    }
    Ok(c)
}
