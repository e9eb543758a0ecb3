//! Synthetic scenes, noise injection and Monte Carlo error studies.
//!
//! Each iteration perturbs the bearing and range of every observation with
//! independent zero-mean Gaussians, re-solves, and records the error of the
//! recovered reflection point and target. Iteration `i` draws from ChaCha8
//! stream `i` of the run seed, so a report is the same whether iterations
//! run sequentially or on rayon.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{reflect_bearing, reflect_point, Bearing, Pose2D, Ray, ReflectorState};
use crate::placement::{lateral_half_extent, step_size, PlacementParams};
use crate::ranging::Observation;
use crate::solver::{solve, BeaconSpec, SolveOptions};

/// Measurement noise standard deviations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseModel {
    /// Radians.
    pub sigma_bearing: f64,
    /// Same unit as ranges.
    pub sigma_range: f64,
}

impl NoiseModel {
    pub fn new(sigma_bearing: f64, sigma_range: f64) -> Result<Self> {
        for (v, what) in [(sigma_bearing, "bearing noise"), (sigma_range, "range noise")] {
            if !v.is_finite() {
                return Err(Error::NonFinite(what));
            }
            if v < 0.0 {
                return Err(Error::NonPositiveInput(what));
            }
        }
        Ok(Self {
            sigma_bearing,
            sigma_range,
        })
    }

    pub fn from_degrees(sigma_bearing_deg: f64, sigma_range: f64) -> Result<Self> {
        Self::new(sigma_bearing_deg.to_radians(), sigma_range)
    }

    fn perturb<R: Rng>(&self, o: &Observation, rng: &mut R) -> Observation {
        let db = Normal::new(0.0, self.sigma_bearing).map_or(0.0, |n| n.sample(rng));
        let dr = Normal::new(0.0, self.sigma_range).map_or(0.0, |n| n.sample(rng));
        Observation {
            bearing: o.bearing.rotated(db),
            apparent_size: None,
            estimated_range: o.estimated_range + dr,
        }
    }
}

/// Ground truth for one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub observer: Pose2D,
    pub reflector: ReflectorState,
    pub target: Pose2D,
    pub beacons: Vec<Pose2D>,
    /// Placement tilt bound, radians.
    pub epsilon: f64,
}

impl Scenario {
    /// Noiseless observation of the target.
    pub fn target_observation(&self) -> Result<Observation> {
        synthesize_observation(self, self.target)
    }

    /// Beacons paired with their noiseless observations.
    pub fn beacon_specs(&self) -> Result<Vec<BeaconSpec>> {
        self.beacons
            .iter()
            .map(|&p| {
                Ok(BeaconSpec {
                    position: p,
                    observation: synthesize_observation(self, p)?,
                })
            })
            .collect()
    }

    /// Where the target's line of sight meets the reflector.
    pub fn reflection_point(&self) -> Result<Pose2D> {
        let o = self.target_observation()?;
        self.reflector.hit(&Ray::new(self.observer, o.bearing))
    }

    pub fn placement_params(&self) -> Result<PlacementParams> {
        let o = self.target_observation()?;
        PlacementParams::new(o.bearing, o.estimated_range, self.reflector.size(), self.epsilon)
    }

    /// A random valid scene: the target and every beacon reflect off the
    /// finite reflector at incidence no shallower than ~11°.
    pub fn random<R: Rng>(rng: &mut R, beacons: usize) -> Self {
        loop {
            if let Some(scene) = Self::try_random(rng, beacons) {
                return scene;
            }
        }
    }

    fn try_random<R: Rng>(rng: &mut R, beacons: usize) -> Option<Self> {
        let observer = Pose2D::new(rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0));
        let center = observer
            + Pose2D::unit(rng.random_range(-PI..PI)) * rng.random_range(20.0..100.0);
        let size = rng.random_range(10.0..40.0);
        let reflector = ReflectorState::new(center, rng.random_range(0.05..PI - 0.05), size).ok()?;
        let place = |rng: &mut R| -> Option<Pose2D> {
            let hit = center + reflector.line.direction() * (size * rng.random_range(-0.45..0.45));
            let incoming = Bearing::towards(observer, hit);
            if incoming.unit().cross(reflector.line.direction()).abs() < 0.2 {
                return None;
            }
            let out = reflect_bearing(incoming, &reflector.line);
            Some(hit + out.unit() * rng.random_range(2.0..80.0))
        };
        let target = place(rng)?;
        let beacons = (0..beacons).map(|_| place(rng)).collect::<Option<Vec<_>>>()?;
        let scene = Self {
            observer,
            reflector,
            target,
            beacons,
            epsilon: 5f64.to_radians(),
        };
        scene.target_observation().ok()?;
        scene.beacon_specs().ok()?;
        Some(scene)
    }
}

/// Noiseless reflected observation of `point`: bearing to its mirror image
/// and the total path length.
pub fn synthesize_observation(scene: &Scenario, point: Pose2D) -> Result<Observation> {
    let line = &scene.reflector.line;
    let side_obs = line.signed_distance(scene.observer);
    let side_pt = line.signed_distance(point);
    if side_obs == 0.0 || side_obs * side_pt < 0.0 {
        return Err(Error::RayMissesReflector);
    }
    let image = reflect_point(point, line);
    let d_total = scene.observer.distance(image);
    let bearing = Bearing::towards(scene.observer, image);
    scene
        .reflector
        .hit(&Ray::new(scene.observer, bearing))
        .map_err(|_| Error::RayMissesReflector)?;
    Observation::with_range(bearing, d_total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub index: usize,
    pub target_observation: Observation,
    pub beacon_observations: Vec<Observation>,
    pub outcome: std::result::Result<Estimate, Error>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub reflection_point: Pose2D,
    pub orientation: f64,
    pub target: Pose2D,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RmseReport {
    pub iterations: usize,
    pub failures: usize,
    pub noise: NoiseModel,
    pub reflection_truth: Pose2D,
    pub target_truth: Pose2D,
    /// Per-coordinate RMSE of the reflection point: sqrt(Σ(Δx² + Δy²) / 2N).
    pub rmse_reflector: f64,
    /// Per-coordinate RMSE of the target.
    pub rmse_target: f64,
    /// sqrt(Σ|Δ|² / N) for the reflection point.
    pub rmse_reflector_euclidean: f64,
    pub rmse_target_euclidean: f64,
    pub records: Vec<IterationRecord>,
}

impl RmseReport {
    pub fn successes(&self) -> usize {
        self.iterations - self.failures
    }
}

pub fn run_monte_carlo(
    scene: &Scenario,
    noise: &NoiseModel,
    iterations: usize,
    seed: u64,
    opts: &SolveOptions,
    exec: Execution,
) -> Result<RmseReport> {
    if iterations == 0 {
        return Err(Error::InvalidCount(0));
    }
    let target_obs = scene.target_observation()?;
    let beacons = scene.beacon_specs()?;
    let reflection_truth = scene.reflection_point()?;

    let records = exec.map_indexed(iterations, |index| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let target_noisy = noise.perturb(&target_obs, &mut rng);
        let noisy: Vec<BeaconSpec> = beacons
            .iter()
            .map(|b| BeaconSpec {
                position: b.position,
                observation: noise.perturb(&b.observation, &mut rng),
            })
            .collect();
        let outcome = if target_noisy.estimated_range <= 0.0
            || noisy.iter().any(|b| b.observation.estimated_range <= 0.0)
        {
            Err(Error::NonPositiveInput("range"))
        } else {
            solve(scene.observer, &target_noisy, &noisy, opts).map(|r| Estimate {
                reflection_point: r.reflection_point(),
                orientation: r.reflector.orientation(),
                target: r.target,
            })
        };
        IterationRecord {
            index,
            target_observation: target_noisy,
            beacon_observations: noisy.iter().map(|b| b.observation).collect(),
            outcome,
        }
    });

    let mut sum_r = 0.0;
    let mut sum_t = 0.0;
    let mut ok = 0usize;
    for rec in &records {
        if let Ok(e) = &rec.outcome {
            let dr = e.reflection_point - reflection_truth;
            let dt = e.target - scene.target;
            sum_r += dr.dot(dr);
            sum_t += dt.dot(dt);
            ok += 1;
        }
    }
    let n = ok as f64;
    Ok(RmseReport {
        iterations,
        failures: iterations - ok,
        noise: *noise,
        reflection_truth,
        target_truth: scene.target,
        rmse_reflector: (sum_r / (2.0 * n)).sqrt(),
        rmse_target: (sum_t / (2.0 * n)).sqrt(),
        rmse_reflector_euclidean: (sum_r / n).sqrt(),
        rmse_target_euclidean: (sum_t / n).sqrt(),
        records,
    })
}

/// Placement region under noisy target measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyRegion {
    pub alpha: Bearing,
    pub d_total: f64,
    /// Right-angle vertex (candidate reflection point at `d_total`).
    pub apex: Pose2D,
    pub step: f64,
    pub half_extent: f64,
    /// `[right, left]` triangles: apex, vertex back along the ray, vertex across it.
    pub triangles: [[Pose2D; 3]; 2],
}

/// Placement triangle at the full observed range, recomputed for `count`
/// noisy draws of the target observation. Index 0 is the noiseless region.
pub fn placement_regions(
    scene: &Scenario,
    noise: &NoiseModel,
    count: usize,
    seed: u64,
) -> Result<Vec<NoisyRegion>> {
    let truth = scene.target_observation()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count + 1);
    for k in 0..=count {
        let o = if k == 0 {
            truth
        } else {
            noise.perturb(&truth, &mut rng)
        };
        let params = PlacementParams::new(o.bearing, o.estimated_range, scene.reflector.size(), scene.epsilon)?;
        let step = step_size(&params)?;
        let half = lateral_half_extent(&params)?;
        let along = o.bearing.unit();
        let apex = scene.observer + along * o.estimated_range;
        let back = apex - along * step;
        let tri = |side: f64| [apex, back, apex + along.perp() * (side * half)];
        out.push(NoisyRegion {
            alpha: o.bearing,
            d_total: o.estimated_range,
            apex,
            step,
            half_extent: half,
            triangles: [tri(-1.0), tri(1.0)],
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::MirrorLine;
    use crate::solver::localize_target;

    fn flat_mirror() -> Scenario {
        Scenario {
            observer: Pose2D::ORIGIN,
            reflector: ReflectorState::new(Pose2D::new(15.5, 34.0), 0.0, 18.2).unwrap(),
            target: Pose2D::new(23.5, 16.4),
            beacons: vec![Pose2D::new(18.2, 0.0)],
            epsilon: 5f64.to_radians(),
        }
    }

    #[test]
    fn synthesize_flat_mirror_target() {
        let o = flat_mirror().target_observation().unwrap();
        assert!((o.estimated_range - 56.70).abs() < 0.05, "{}", o.estimated_range);
        assert!((o.bearing.degrees() - 65.5).abs() < 0.05);
    }

    #[test]
    fn synthesize_reflection_point_has_first_leg_only() {
        let s = flat_mirror();
        let r = Pose2D::new(15.5, 34.0);
        let o = synthesize_observation(&s, r).unwrap();
        assert!((o.estimated_range - r.norm()).abs() < 1e-12);
    }

    #[test]
    fn synthesize_rejects_invisible_points() {
        let s = flat_mirror();
        // behind the mirror
        assert_eq!(synthesize_observation(&s, Pose2D::new(15.0, 50.0)), Err(Error::RayMissesReflector));
        // image ray passes beside the finite reflector
        assert_eq!(synthesize_observation(&s, Pose2D::new(80.0, 10.0)), Err(Error::RayMissesReflector));
    }

    #[test]
    fn synthesize_then_localize_round_trip() {
        let s = flat_mirror();
        let o = s.target_observation().unwrap();
        let r = localize_target(s.observer, &o, &s.reflector.line, &SolveOptions::default()).unwrap();
        assert!(r.target.distance(s.target) < 1e-9);
    }

    #[test]
    fn zero_noise_gives_zero_rmse() {
        let s = flat_mirror();
        let rep = run_monte_carlo(&s, &NoiseModel::default(), 20, 1, &SolveOptions::default(), Execution::Parallel)
            .unwrap();
        assert_eq!(rep.failures, 0);
        assert!(rep.rmse_reflector < 1e-12 && rep.rmse_target < 1e-12);
        assert!(rep.rmse_reflector_euclidean < 1e-12 && rep.rmse_target_euclidean < 1e-12);
    }

    #[test]
    fn reports_are_deterministic() {
        let s = flat_mirror();
        let noise = NoiseModel::from_degrees(1.0, 0.5).unwrap();
        let opts = SolveOptions { max_residual_ratio: 1.0, ..Default::default() };
        let a = run_monte_carlo(&s, &noise, 64, 9, &opts, Execution::Sequential).unwrap();
        let b = run_monte_carlo(&s, &noise, 64, 9, &opts, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        let c = run_monte_carlo(&s, &noise, 64, 10, &opts, Execution::Parallel).unwrap();
        assert_ne!(a.rmse_target, c.rmse_target);
        assert!((a.rmse_target_euclidean / a.rmse_target - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn failures_are_counted_not_averaged() {
        let mut s = flat_mirror();
        let hit = Pose2D::new(10.0, 34.0);
        s.beacons.push(hit + Pose2D::new(10.0, -34.0) * 0.5);
        let noise = NoiseModel::from_degrees(0.5, 0.1).unwrap();
        let opts = SolveOptions { max_residual_ratio: 1e-6, ..Default::default() };
        let rep = run_monte_carlo(&s, &noise, 10, 3, &opts, Execution::Sequential).unwrap();
        assert_eq!(rep.failures, 10);
        assert!(rep.records.iter().all(|r| matches!(r.outcome, Err(Error::Inconsistent { .. }))));
        assert!(rep.rmse_target.is_nan());
    }

    #[test]
    fn rmse_shrinks_with_noise() {
        let s = flat_mirror();
        let opts = SolveOptions { max_residual_ratio: 1.0, ..Default::default() };
        let mut last = f64::INFINITY;
        for sigma in [1e-2, 1e-4, 1e-6] {
            let noise = NoiseModel::new(sigma, sigma).unwrap();
            let rep = run_monte_carlo(&s, &noise, 50, 4, &opts, Execution::Parallel).unwrap();
            assert!(rep.rmse_target < last);
            last = rep.rmse_target;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn random_scenes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let s = Scenario::random(&mut rng, 2);
            assert!(s.target_observation().is_ok());
            assert_eq!(s.beacon_specs().unwrap().len(), 2);
            let m: MirrorLine = s.reflector.line;
            assert!(m.signed_distance(s.observer) * m.signed_distance(s.target) > 0.0);
        }
    }

    #[test]
    fn noisy_regions_keep_their_legs() {
        let s = flat_mirror();
        let noise = NoiseModel::from_degrees(2.6, 0.29).unwrap();
        let regions = placement_regions(&s, &noise, 50, 11).unwrap();
        let truth = regions[0];
        for r in &regions[1..] {
            assert!((r.step - truth.step).abs() < 1e-9 * truth.step);
            assert!((r.half_extent - truth.half_extent).abs() < 1e-9 * truth.half_extent);
            let legs = [r.triangles[0][0].distance(r.triangles[0][1]), r.triangles[1][0].distance(r.triangles[1][2])];
            assert!((legs[0] - truth.step).abs() < 1e-9 && (legs[1] - truth.half_extent).abs() < 1e-9);
        }
        // but the triangles do move
        assert!(regions[1..].iter().any(|r| r.apex.distance(truth.apex) > 1e-3));
    }
}
