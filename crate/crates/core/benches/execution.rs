use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pcalib::harness::{verify_fisher_validity_grid, verify_rlb_validity, SimulationPlan};
use pcalib::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn rlb_monte_carlo(c: &mut Criterion) {
    let plan = SimulationPlan::new(7, 1_000_000, 1.0, vec![0.01, 0.05, 0.1, 0.5, 1.0]).unwrap();
    let mut group = c.benchmark_group("rlb_monte_carlo_1e6");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| verify_rlb_validity(&plan, mode).unwrap())
        });
    }
    group.finish();
}

fn fisher_enumeration(c: &mut Criterion) {
    let grid: Vec<f64> = (1..10).map(|i| f64::from(i) / 10.0).collect();
    let mut group = c.benchmark_group("fisher_enumeration_8x8");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| verify_fisher_validity_grid(8, &grid, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, rlb_monte_carlo, fisher_enumeration);
criterion_main!(benches);
