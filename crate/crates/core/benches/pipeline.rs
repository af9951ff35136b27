use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use unity_sieve::pipeline::{brute_force_enumerate, generate_systems, scan_systems, PivotConfig, TorusEquation};
use unity_sieve::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn enumerate(c: &mut Criterion) {
    let eq = TorusEquation::sharygin();
    let mut g = c.benchmark_group("enumerate");
    for n in [210u64, 420] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| brute_force_enumerate(&eq, black_box(n), exec).unwrap())
            });
        }
    }
    g.finish();
}

fn scan(c: &mut Criterion) {
    let eq = TorusEquation::sharygin();
    let systems = generate_systems(5, &PivotConfig::main());
    let mut g = c.benchmark_group("scan");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| scan_systems(&eq, black_box(&systems), exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, enumerate, scan);
criterion_main!(benches);
