use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use odsq_bench::{sieve_for, GEN_COUNTS, PI_POINTS};
use odsq_core::{count_kl, count_p_corrected, first_n_primes, index_at, pi_of, pi_of_with, Strategy};

fn pi(c: &mut Criterion) {
    let mut group = c.benchmark_group("pi");
    let sieve = sieve_for(*PI_POINTS.last().unwrap());
    for &x in PI_POINTS {
        group.bench_with_input(BenchmarkId::new("oracle_lookup", x), &x, |b, &x| {
            b.iter(|| pi_of_with(black_box(x as f64), Strategy::OracleExact, &sieve).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle_with_sieve", x), &x, |b, &x| {
            b.iter(|| pi_of(black_box(x as f64), Strategy::OracleExact).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("paper_eq6", x), &x, |b, &x| {
            b.iter(|| pi_of(black_box(x as f64), Strategy::PaperEq6).unwrap())
        });
    }
    group.finish();
}

fn closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_forms");
    for &x in PI_POINTS {
        let n = index_at(x as f64).unwrap();
        group.bench_with_input(BenchmarkId::new("count_kl", x), &n, |b, &n| {
            b.iter(|| count_kl(black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("count_p_corrected_97", x), &n, |b, &n| {
            b.iter(|| count_p_corrected(97, black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn generator(c: &mut Criterion) {
    let mut group = c.benchmark_group("first_n_primes");
    group.sample_size(10);
    for &count in GEN_COUNTS {
        group.bench_with_input(BenchmarkId::from_parameter(count), &count, |b, &count| {
            b.iter(|| first_n_primes(black_box(count), true).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pi, closed_forms, generator);
criterion_main!(benches);
