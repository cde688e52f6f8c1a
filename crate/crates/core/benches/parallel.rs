//! Parallel-vs-sequential benchmarks for the data-parallel hot paths:
//! batches of retarded-time slices through the analytic solver, and the
//! Maxwell-Bloch atomic advance across z nodes.
//!
//! Build without the `parallel` feature to measure the dependency-free
//! sequential build; with default features the two execution modes are
//! compared directly.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use triwave::hamiltonian::{exchange_at, AdiabaticSolution, Branch};
use triwave::model::{BoundaryFields, Envelope, MediumParams};
use triwave::oracle::{integrate_mb, linspace, IntegratorConfig, MbInit, SpaceTimeGrid};
use triwave::parallel::{par_map, ExecMode};

fn reference_params() -> MediumParams {
    MediumParams {
        n_density: 1.0,
        mu1: 0.05,
        mu2: 0.5,
        mu3: 1.0,
        delta2: 0.0,
        delta3: 0.0,
        gamma: 0.0,
        delta_k: 0.0,
        theta: 0.0,
    }
}

/// Solve a batch of retarded-time slices (the inner loop of `solve` and
/// `sweep`): one adiabatic solution assembly plus a z-scan per slice.
fn bench_slice_batch(c: &mut Criterion) {
    let p = reference_params();
    let taus = linspace(-2.0, 2.0, 256);
    let env = Envelope::gaussian(2.0, 0.0, taus.clone()).unwrap();
    let slices: Vec<(f64, f64)> = taus
        .iter()
        .map(|&t| (1.0 * env.eval(t).max(1e-6), 1.0 * env.eval(t).max(1e-6)))
        .collect();
    let zs = linspace(0.0, 30.0, 200);

    let mut group = c.benchmark_group("slice_batch");
    for mode in [ExecMode::Sequential, ExecMode::Parallel] {
        group.bench_with_input(
            BenchmarkId::new("solve", format!("{mode:?}")),
            &mode,
            |bench, &mode| {
                bench.iter(|| {
                    let rows = par_map(mode, &slices, |_, &(e1, e2)| {
                        let b = BoundaryFields::cw(e1, e2, 0.0);
                        let sol =
                            AdiabaticSolution::solve(&p, &b, Branch::GroundConnected).unwrap();
                        zs.iter()
                            .map(|&z| exchange_at(z, &sol).unwrap().j)
                            .sum::<f64>()
                    });
                    std::hint::black_box(rows)
                })
            },
        );
    }
    group.finish();
}

/// One Maxwell-Bloch march on a moderate grid; the atomic advance over the
/// z nodes is the parallel surface.
fn bench_mb_march(c: &mut Criterion) {
    let p = reference_params();
    let taus = linspace(0.0, 30.0, 200);
    let boundary = BoundaryFields {
        eta10: 1.0,
        eta20: 1.0,
        eta30: 0.0,
        phi0: 0.0,
        envelope1: Envelope::smoothstep_on(12.0, 10.0, taus.clone()).unwrap(),
        envelope2: Envelope::smoothstep_on(1.0, 8.0, taus.clone()).unwrap(),
    };
    let grid = SpaceTimeGrid {
        z: linspace(0.0, 15.0, 301),
        tau: linspace(0.0, 30.0, 61),
    };
    let cfg = IntegratorConfig {
        rel_tol: 1e-8,
        abs_tol: 1e-10,
        ..Default::default()
    };
    let mut group = c.benchmark_group("mb_march");
    group.sample_size(10);
    for mode in [ExecMode::Sequential, ExecMode::Parallel] {
        group.bench_with_input(
            BenchmarkId::new("integrate", format!("{mode:?}")),
            &mode,
            |bench, &mode| {
                bench.iter(|| {
                    let sol = integrate_mb(&p, &boundary, &grid, &cfg, MbInit::GroundState, mode)
                        .unwrap();
                    std::hint::black_box(sol.manley_rowe_drift)
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_slice_batch, bench_mb_march);
criterion_main!(benches);
