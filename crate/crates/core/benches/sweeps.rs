//! Parallel versus sequential execution of the data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use vdc_zeta::harness::{verify_range, PartitionSpec, SweepOptions, Threshold};
use vdc_zeta::pipeline::{eta0, partial_sum_sweep};
use vdc_zeta::vdc::{check_instance, random_instances};
use vdc_zeta::zeta::EmConfig;
use vdc_zeta::Execution;

const MODES: [(&str, Execution); 2] = [
    ("parallel", Execution::Parallel),
    ("sequential", Execution::Sequential),
];

fn sweep(c: &mut Criterion) {
    let spec = PartitionSpec::new(
        100.0,
        102.0,
        128,
        EmConfig::twice_t(),
        Threshold::PowerLog { c: 0.63 },
    )
    .expect("valid spec");
    let mut g = c.benchmark_group("verify_range_100_102_q128");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = SweepOptions {
            exec,
            ..SweepOptions::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| verify_range(&spec, o).expect("sweep"))
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let instances = random_instances(1, 64, 1e4, 1e8);
    let mut g = c.benchmark_group("vdc_oracle_64");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| exec.map(&instances, |i| check_instance(i, eta0()).expect("instance")))
        });
    }
    g.finish();
}

fn partial_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("partial_sum_sweep_2000");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| partial_sum_sweep(2000, exec).expect("sweep"))
        });
    }
    g.finish();
}

criterion_group!(benches, sweep, oracle, partial_sums);
criterion_main!(benches);
