//! Acceptance criteria, one line of output per criterion.
//!
//! Every oracle here is local to this file: a plain `Vec<bool>` sieve and
//! nested-loop tuple counts. Nothing is shared with the code under test.

use std::time::{Duration, Instant};

use odsq_core::report::{verify, ClassSpec, Variant};
use odsq_core::{
    count_3, count_kkl, count_kl, count_kpow, count_p_corrected, count_p_paper, first_n_primes,
    pi_of, pi_of_with, SieveTable, Strategy, WheelSpec,
};

type Outcome = Result<String, String>;

fn plain_sieve(limit: usize) -> Vec<bool> {
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    if limit >= 1 {
        is_prime[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is_prime[i] {
            for j in (i * i..=limit).step_by(i) {
                is_prime[j] = false;
            }
        }
        i += 1;
    }
    is_prime
}

fn odd_primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| p % 2 == 1 && is_prime_trial(p)).collect()
}

fn is_prime_trial(u: u64) -> bool {
    u >= 2 && (2..).take_while(|d| d * d <= u).all(|d| u % d != 0)
}

// Cumulative counts per index n of values v (odd, >= 3) <= U_max.
fn cumulative(values: impl Iterator<Item = u64>, max_n: usize) -> Vec<u64> {
    let mut buckets = vec![0u64; max_n + 1];
    for v in values {
        buckets[((v - 3) / 2) as usize] += 1;
    }
    let mut acc = 0;
    buckets
        .into_iter()
        .map(|b| {
            acc += b;
            acc
        })
        .collect()
}

fn p_composites(p: u64, max_n: usize) -> Vec<u64> {
    let top = 3 + 2 * max_n as u64;
    let values = (3..=top).step_by(2).filter(move |&u| {
        if p == 3 {
            u % 3 == 0 && u > 3
        } else {
            u % p == 0 && u / p >= p && (u / p) % 3 != 0
        }
    });
    cumulative(values, max_n)
}

fn ac1_pi() -> Outcome {
    const LIMIT: usize = 1_000_000;
    let truth = plain_sieve(LIMIT);
    let sieve = SieveTable::build(LIMIT as u64).map_err(|e| e.to_string())?;
    let mut running = 0i64;
    for x in 2..=LIMIT {
        if truth[x] {
            running += 1;
        }
        let got = pi_of_with(x as f64, Strategy::OracleExact, &sieve)
            .map_err(|e| e.to_string())?
            .pi;
        if got != running {
            return Err(format!("pi({x}) = {got}, expected {running}"));
        }
    }
    for (x, expected) in [(10.0, 4), (100.0, 25), (1000.0, 168), (1e6, 78_498)] {
        let got = pi_of(x, Strategy::OracleExact).map_err(|e| e.to_string())?.pi;
        if got != expected {
            return Err(format!("pi({x}) = {got}, expected {expected}"));
        }
    }
    Ok(format!("all x in [2, {LIMIT}] exact; pi(10^6) = 78498"))
}

fn ac2_zfunc_fidelity() -> Outcome {
    const MAX_N: usize = 100_000;
    for p in [7u64, 11] {
        let truth = p_composites(p, MAX_N);
        for n in 0..=MAX_N {
            let got = count_p_paper(p, n as u64).map_err(|e| e.to_string())?;
            if got != truth[n] {
                return Err(format!("printed p={p} form: n={n} gives {got}, expected {}", truth[n]));
            }
        }
    }
    // The p = 5 form as printed: 1[n >= 11] * floor(floor((n - 11)/5)/3 + 1/3),
    // evaluated with exact rationals (numerator over 3).
    for n in 0..=MAX_N as u64 {
        let printed = if n >= 11 { ((n - 11) / 5 + 1) / 3 } else { 0 };
        let got = count_p_paper(5, n).map_err(|e| e.to_string())?;
        if got != printed {
            return Err(format!("p=5 printed form not reproduced at n={n}"));
        }
    }
    let report = verify(MAX_N as u64, &[ClassSpec::P(5)], &[Variant::Paper])
        .map_err(|e| e.to_string())?;
    let row = &report.rows[0];
    if (row.location, row.paper, row.oracle) != (11, 0, 1) {
        return Err(format!("p=5 deviation reported as {row:?}"));
    }
    Ok(format!(
        "p in {{7, 11}} exact to n = {MAX_N}; p = 5 first deviates at n = 11 (paper 0, enumeration 1), {} mismatching indices",
        row.mismatches
    ))
}

fn ac3_generalized() -> Outcome {
    const MAX_N: usize = 100_000;
    let primes = odd_primes_between(3, 97);
    for &p in &primes {
        let truth = p_composites(p, MAX_N);
        for n in 0..=MAX_N {
            let got = if p == 3 {
                count_3(n as u64)
            } else {
                count_p_corrected(p, n as u64).map_err(|e| e.to_string())?
            };
            if got != truth[n] {
                return Err(format!("p={p} n={n}: {got} vs {}", truth[n]));
            }
        }
    }
    Ok(format!("{} primes 3..=97, n <= {MAX_N}", primes.len()))
}

fn ac4_ascending() -> Outcome {
    const MAX_N: usize = 10_000;
    let top = 3 + 2 * MAX_N as u64;
    let odd = |from: u64| (from..).step_by(2);

    let kl = cumulative(
        odd(3)
            .take_while(|k| k * k <= top)
            .flat_map(|k| odd(k).map(move |l| k * l).take_while(|&v| v <= top)),
        MAX_N,
    );
    let kkl = cumulative(
        odd(3)
            .take_while(|k| k * k * k <= top)
            .flat_map(|k| odd(k).map(move |l| k * k * l).take_while(|&v| v <= top)),
        MAX_N,
    );
    for n in 0..=MAX_N {
        let (a, b) = (
            count_kl(n as u64).map_err(|e| e.to_string())?,
            count_kkl(n as u64).map_err(|e| e.to_string())?,
        );
        if a != kl[n] || b != kkl[n] {
            return Err(format!("n={n}: kl {a}/{} kkl {b}/{}", kl[n], kkl[n]));
        }
    }
    for j in 1..=6u32 {
        let pow = cumulative(
            odd(3).map(|k| k.pow(j)).take_while(|&v| v <= top),
            MAX_N,
        );
        for n in 0..=MAX_N {
            let got = count_kpow(j, n as u64).map_err(|e| e.to_string())?;
            if got != pow[n] {
                return Err(format!("kpow j={j} n={n}: {got} vs {}", pow[n]));
            }
        }
    }
    Ok(format!("kl, kkl, kpow (j <= 6) exact for n <= {MAX_N}"))
}

fn ac5_generator() -> Outcome {
    const COUNT: usize = 100_000;
    let start = Instant::now();
    let got = first_n_primes(COUNT, true).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let truth: Vec<u64> = plain_sieve(2_000_000)
        .iter()
        .enumerate()
        .filter(|(_, &p)| p)
        .map(|(i, _)| i as u64)
        .take(COUNT)
        .collect();
    if got != truth {
        let at = got.iter().zip(&truth).position(|(a, b)| a != b);
        return Err(format!("first mismatch at position {at:?}"));
    }
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("first {COUNT} primes exact, last {}, {elapsed:.2?}", got[COUNT - 1]))
}

fn ac6_thresholds() -> Outcome {
    for p in odd_primes_between(5, 97) {
        let t = (p * p - 3) / 2;
        let before = count_p_corrected(p, t - 1).map_err(|e| e.to_string())?;
        let at = count_p_corrected(p, t).map_err(|e| e.to_string())?;
        if (before, at) != (0, 1) {
            return Err(format!("p={p}: counts {before} -> {at} at threshold {t}"));
        }
    }
    for (p, t) in [(5u64, 11u64), (7, 23), (11, 59)] {
        if (p * p - 3) / 2 != t || count_p_corrected(p, t).unwrap() != 1 {
            return Err(format!("threshold for p={p} is not {t}"));
        }
    }
    Ok("0 -> 1 at (p^2 - 3)/2 for all primes 5..=97; 11, 23, 59 for p = 5, 7, 11".into())
}

fn ac7_wheels() -> Outcome {
    const LIMIT: u64 = 100_000;
    for divisors in [&[3u64][..], &[5], &[3, 5]] {
        let spec = WheelSpec::build(divisors).map_err(|e| e.to_string())?;
        let stream = spec.stream(LIMIT);
        let max = *divisors.iter().max().unwrap();
        for p in odd_primes_between(max + 1, LIMIT) {
            if stream.binary_search(&p).is_err() {
                return Err(format!("{divisors:?}: prime {p} missing"));
            }
        }
        if let Some(bad) = stream.iter().find(|&&u| divisors.iter().any(|d| u % d == 0)) {
            return Err(format!("{divisors:?}: {bad} is divisible by a divisor"));
        }
    }
    Ok(format!("{{3}}, {{5}}, {{3,5}} complete and coprime to {LIMIT}"))
}

fn ac8_complexity_info() -> Outcome {
    let mut line = String::from("informational only:");
    for x in [1e4, 1e5, 1e6] {
        let t = Instant::now();
        pi_of(x, Strategy::OracleExact).map_err(|e| e.to_string())?;
        let oracle = t.elapsed();
        let t = Instant::now();
        pi_of(x, Strategy::PaperEq6).map_err(|e| e.to_string())?;
        let paper = t.elapsed();
        line.push_str(&format!(" x={x:e} oracle {oracle:.2?} paper {paper:.2?};"));
    }
    Ok(line)
}

#[test]
fn acceptance() {
    let criteria: [(&str, &str, fn() -> Outcome); 7] = [
        ("AC1", "pi correctness", ac1_pi),
        ("AC2", "Z-function fidelity", ac2_zfunc_fidelity),
        ("AC3", "generalized p-composite counter", ac3_generalized),
        ("AC4", "ascending-factorization counters", ac4_ascending),
        ("AC5", "prime generator", ac5_generator),
        ("AC6", "threshold property", ac6_thresholds),
        ("AC7", "wheel completeness", ac7_wheels),
    ];
    println!();
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({:.2?})", start.elapsed()),
            Err(why) => {
                println!("[FAIL] {id} {name}: {why}");
                failed.push(id);
            }
        }
    }
    match ac8_complexity_info() {
        Ok(detail) => println!("[INFO] AC8 complexity claim out of scope; {detail}"),
        Err(why) => println!("[INFO] AC8 timing skipped: {why}"),
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
