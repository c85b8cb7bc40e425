use std::hint::black_box;

use bellqfi::linalg::LanczosOptions;
use bellqfi::{
    bell_correlator, bound_correlator_sum, ising_matvec, models::ising_ground_state_with, qfi_pure,
    symmetric_bound_correlator_sum, two_mode_ground_state, CorrelatorSpec, IsingParams, IsingSolver, SpinTriad,
    TwoModeParams,
};
use bellqfi_bench::{critical_dicke, spread_state};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn correlators(c: &mut Criterion) {
    let psi = spread_state(20);
    let full = CorrelatorSpec::full_raise(20).unwrap();
    let pair = CorrelatorSpec::from_masks(0b1, 0b10).unwrap();
    c.bench_function("bell_correlator/full_n20", |b| b.iter(|| bell_correlator(black_box(&psi), &full)));
    c.bench_function("bell_correlator/pair_n20", |b| b.iter(|| bell_correlator(black_box(&psi), &pair)));
    c.bench_function("qfi_pure/n20", |b| b.iter(|| qfi_pure(black_box(&psi), &SpinTriad::z())));
}

fn correlator_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("bound_correlator_sum");
    group.sample_size(10);
    for n in [8usize, 10, 12] {
        let psi = spread_state(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &psi, |b, psi| {
            b.iter(|| bound_correlator_sum(psi, &SpinTriad::z(), None).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("symmetric_bound_correlator_sum");
    group.sample_size(10);
    for n in [100usize, 300] {
        let d = critical_dicke(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| symmetric_bound_correlator_sum(d, None).unwrap())
        });
    }
    group.finish();
}

fn ground_states(c: &mut Criterion) {
    let params = IsingParams::new(16, -1.0).unwrap();
    let psi = spread_state(16);
    c.bench_function("ising_matvec/n16", |b| b.iter(|| ising_matvec(&params, black_box(&psi)).unwrap()));

    let mut group = c.benchmark_group("ising_ground_state");
    group.sample_size(10);
    let dense = IsingParams::new(10, -1.0).unwrap();
    group.bench_function("dense_n10", |b| b.iter(|| ising_ground_state_with(&dense, IsingSolver::Dense).unwrap()));
    let lanczos = IsingParams::new(14, -1.0).unwrap();
    group.bench_function("lanczos_n14", |b| {
        b.iter(|| ising_ground_state_with(&lanczos, IsingSolver::Lanczos(LanczosOptions::default())).unwrap())
    });
    group.finish();

    let two_mode = TwoModeParams::new(1000, -1.5).unwrap();
    c.bench_function("two_mode_ground_state/n1000", |b| b.iter(|| two_mode_ground_state(&two_mode).unwrap()));
}

criterion_group!(benches, correlators, correlator_sum, ground_states);
criterion_main!(benches);
