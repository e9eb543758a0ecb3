use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use mirrorloc::geometry::{Bearing, Pose2D};
use mirrorloc::motion::{sample_motion, MotionCommand, MotionNoise};
use mirrorloc::placement::step_size;
use mirrorloc::simulate::{run_monte_carlo, NoiseModel, Scenario};
use mirrorloc::solver::{grid_sweep, SolveOptions};
use mirrorloc::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn scene() -> Scenario {
    Scenario::random(&mut ChaCha8Rng::seed_from_u64(42), 3)
}

fn monte_carlo(c: &mut Criterion) {
    let scene = scene();
    let noise = NoiseModel::from_degrees(1.73, 0.16).unwrap();
    let opts = SolveOptions {
        reflector_size: scene.reflector.size(),
        max_residual_ratio: 1.0,
    };
    let mut group = c.benchmark_group("monte_carlo_2000");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_monte_carlo(black_box(&scene), &noise, 2000, 7, &opts, exec).unwrap())
        });
    }
    group.finish();
}

fn grid(c: &mut Criterion) {
    let scene = scene();
    let target = scene.target_observation().unwrap();
    let beacons = scene.beacon_specs().unwrap();
    let step = step_size(&scene.placement_params().unwrap()).unwrap();
    let opts = SolveOptions::default();
    let mut group = c.benchmark_group("grid_sweep");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                grid_sweep(
                    scene.observer,
                    black_box(&target),
                    &beacons,
                    step,
                    0.5f64.to_radians(),
                    &opts,
                    exec,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn motion(c: &mut Criterion) {
    let cmd = MotionCommand::new(1.0, 0.5, Bearing::from_degrees(30.0)).unwrap();
    let noise = MotionNoise::new(0.1).unwrap();
    let mut group = c.benchmark_group("motion_1e6");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sample_motion(black_box(Pose2D::ORIGIN), &cmd, &noise, 1_000_000, 3, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = monte_carlo, grid, motion
}
criterion_main!(benches);
