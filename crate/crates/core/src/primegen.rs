//! Partition-based generation of the first N primes.
//!
//! Partition `i` has two anchor primes `a < b`. Its candidates are the
//! quotients `U_idx / a` for indices `idx` stepping by `a` from the index of
//! `last * a`, where `last` is the largest prime found so far; that makes the
//! candidates the consecutive odd numbers after `last`. The partition stops
//! before the index of `a * b²`, so no candidate reaches `b²`, and every
//! candidate coprime to the primes `<= a` is therefore prime. After the
//! partition, `b` joins the moduli and the anchors roll over to `(b, next)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::sequences::{element_at, eta};

/// Largest `count` accepted by [`first_n_primes`].
pub const MAX_PRIMES: usize = 10_000_000;

/// Cursor of the partition generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorState {
    pub prime_sequence: Vec<u64>,
    pub modulo_sequence: Vec<u64>,
    pub prime_a: u64,
    pub prime_b: u64,
    pub index: u64,
    pub partition_counter: u64,
    pub last_element: u64,
}

/// What one call to [`GeneratorState::step_partition`] examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub partition: u64,
    pub anchor_a: u64,
    pub anchor_b: u64,
    /// Smallest and largest candidate tested; `None` if the loop was empty.
    pub candidates: Option<(u64, u64)>,
    /// Number of primes appended.
    pub added: usize,
}

impl Default for GeneratorState {
    fn default() -> Self {
        Self::new()
    }
}

impl GeneratorState {
    pub fn new() -> Self {
        GeneratorState {
            prime_sequence: vec![3, 5],
            modulo_sequence: vec![3, 5],
            prime_a: 5,
            prime_b: 7,
            index: (25 - 3) / 2,
            partition_counter: 1,
            last_element: 1,
        }
    }

    /// Runs one partition and the rollover that follows it.
    pub fn step_partition(&mut self) -> Result<PartitionReport> {
        let a = self.prime_a;
        let b = self.prime_b;
        if self.partition_counter > 1 {
            let start = self
                .last_element
                .checked_mul(a)
                .ok_or_else(|| Error::Range("partition start overflows".into()))?;
            self.index = eta(start)?;
        }
        let endpoint = a
            .checked_mul(b)
            .and_then(|v| v.checked_mul(b))
            .ok_or_else(|| Error::Range(format!("{a} * {b}^2 overflows")))
            .and_then(eta)?;

        let before = self.prime_sequence.len();
        let mut first = None;
        let mut last = None;
        while self.index < endpoint - a {
            self.index += a;
            let candidate = element_at(self.index)? / a;
            first.get_or_insert(candidate);
            last = Some(candidate);
            if self.modulo_sequence.iter().all(|m| candidate % m != 0) {
                self.prime_sequence.push(candidate);
            }
        }

        self.modulo_sequence.push(b);
        self.prime_a = b;
        let position = self
            .prime_sequence
            .binary_search(&b)
            .map_err(|_| domain!("anchor {b} missing from the prime sequence"))?;
        self.prime_b = *self
            .prime_sequence
            .get(position + 1)
            .ok_or_else(|| domain!("no prime after anchor {b}"))?;
        let report = PartitionReport {
            partition: self.partition_counter,
            anchor_a: a,
            anchor_b: b,
            candidates: first.zip(last),
            added: self.prime_sequence.len() - before,
        };
        self.partition_counter += 1;
        self.last_element = *self.prime_sequence.last().expect("seeded");
        Ok(report)
    }
}

/// Runs partitions until more than `count` odd primes are known and returns
/// the whole sequence, exactly as the loop produces it: it starts at 3 and
/// usually overshoots `count`.
pub fn raw_sequence(count: usize) -> Result<Vec<u64>> {
    if count > MAX_PRIMES {
        return Err(Error::Resource(format!(
            "{count} primes requested, limit is {MAX_PRIMES}"
        )));
    }
    let mut state = GeneratorState::new();
    while state.prime_sequence.len() <= count {
        state.step_partition()?;
    }
    Ok(state.prime_sequence)
}

/// The first `count` primes, starting at 2 when `include_two` is set and at 3
/// otherwise.
pub fn first_n_primes(count: usize, include_two: bool) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(domain!("count must be at least 1"));
    }
    let odd_needed = if include_two { count - 1 } else { count };
    let mut out = Vec::with_capacity(count);
    if include_two {
        out.push(2);
    }
    out.extend(raw_sequence(odd_needed)?.into_iter().take(odd_needed));
    Ok(out)
}
