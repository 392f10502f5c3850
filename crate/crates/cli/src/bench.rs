use std::time::Instant;

use serde::{Deserialize, Serialize};

use odsq_core::{first_n_primes, pi_of, pi_of_with, Error, Strategy};

use crate::sieve_covering;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub name: String,
    pub x_max: u64,
    pub repeats: usize,
    pub median_ns: u128,
}

fn median_ns(repeats: usize, mut f: impl FnMut() -> odsq_core::Result<()>) -> odsq_core::Result<u128> {
    let mut samples = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let t = Instant::now();
        f()?;
        samples.push(t.elapsed().as_nanos());
    }
    samples.sort_unstable();
    Ok(samples[samples.len() / 2])
}

/// Times `pi(x_max)` under both strategies and generation of the primes
/// below `x_max`. The oracle row includes building the sieve.
pub fn run(x_max: f64, repeats: usize) -> odsq_core::Result<Vec<BenchRow>> {
    if !(x_max >= 2.0) || !x_max.is_finite() {
        return Err(Error::Domain(format!("--x-max must be >= 2, got {x_max}")));
    }
    if repeats == 0 {
        return Err(Error::Domain("--repeats must be at least 1".into()));
    }
    let x = x_max.floor() as u64;
    let count = sieve_covering(x)?.pi(x)? as usize;
    let row = |name: &str, median_ns| BenchRow {
        name: name.into(),
        x_max: x,
        repeats,
        median_ns,
    };
    Ok(vec![
        row(
            "pi(oracle)",
            median_ns(repeats, || {
                let sieve = odsq_core::SieveTable::build(x)?;
                pi_of_with(x as f64, Strategy::OracleExact, &sieve).map(drop)
            })?,
        ),
        row(
            "pi(paper)",
            median_ns(repeats, || pi_of(x as f64, Strategy::PaperEq6).map(drop))?,
        ),
        row(
            "gen",
            median_ns(repeats, || first_n_primes(count, true).map(drop))?,
        ),
    ])
}
