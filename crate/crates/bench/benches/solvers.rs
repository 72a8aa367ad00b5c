use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use clifsat::symsolver::{algorithm1, growth_curve, SolverConfig};
use clifsat::{
    brute_force, compile_cnf, dpll, five_clause_example, DetectorLevel, Heuristic, SignedSum,
};
use clifsat_bench::{ksat_suite, HARD_RATIO};

const SIZES: [u32; 4] = [6, 8, 10, 12];

fn compile(c: &mut Criterion) {
    let mut group = c.benchmark_group("compile");
    for n in SIZES {
        let suite = ksat_suite(n, HARD_RATIO, 4, 0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &suite, |b, suite| {
            b.iter(|| {
                for f in suite {
                    black_box(compile_cnf(f).unwrap().is_symmetric_all());
                }
            })
        });
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    for n in SIZES {
        let suite = ksat_suite(n, HARD_RATIO, 4, 0);
        group.bench_with_input(BenchmarkId::new("brute", n), &suite, |b, suite| {
            b.iter(|| {
                suite
                    .iter()
                    .map(|f| brute_force(f).unwrap().model_count)
                    .sum::<u64>()
            })
        });
        group.bench_with_input(BenchmarkId::new("dpll", n), &suite, |b, suite| {
            b.iter(|| suite.iter().filter(|f| dpll(f).verdict.is_sat()).count())
        });
    }
    group.finish();
}

fn symmetry(c: &mut Criterion) {
    let mut group = c.benchmark_group("symmetry");
    group.sample_size(20);
    let five = SignedSum::single(five_clause_example());
    for level in DetectorLevel::ALL {
        let cfg = SolverConfig::with_level(level);
        group.bench_function(BenchmarkId::new("five-clause", level), |b| {
            b.iter(|| algorithm1(black_box(&five), &cfg).asymmetric)
        });
    }
    for n in [6, 8, 10] {
        let sums: Vec<SignedSum> = ksat_suite(n, HARD_RATIO, 4, 0)
            .into_iter()
            .map(|f| SignedSum::single(f.normalize()))
            .collect();
        for level in DetectorLevel::ALL {
            let cfg = SolverConfig::with_level(level);
            group.bench_with_input(BenchmarkId::new(level.to_string(), n), &sums, |b, sums| {
                b.iter(|| {
                    sums.iter()
                        .filter(|s| algorithm1(s, &cfg).asymmetric)
                        .count()
                })
            });
        }
    }
    group.finish();
}

fn growth(c: &mut Criterion) {
    let mut group = c.benchmark_group("growth");
    group.sample_size(10);
    for n in [8, 10, 12] {
        let sum = SignedSum::single(ksat_suite(n, HARD_RATIO, 1, 0).remove(0));
        group.bench_with_input(BenchmarkId::from_parameter(n), &sum, |b, sum| {
            b.iter(|| growth_curve(sum, Heuristic::MaxOcc, n as usize).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, compile, oracles, symmetry, growth);
criterion_main!(benches);
