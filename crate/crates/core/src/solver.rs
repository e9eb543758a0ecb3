//! Joint recovery of the reflector line and the hidden target.
//!
//! A beacon at a known position, seen through the mirror, appears at its
//! virtual point: range `d_total` along the observed bearing. The mirror is
//! the perpendicular bisector of the true and virtual beacon positions, so a
//! single beacon with bearing and range fixes both the mirror's position and
//! orientation. The target is then the reflection of its own virtual point.
//!
//! With more than one beacon the line is refined by Levenberg-Marquardt over
//! the per-beacon forward-model residuals. [`grid_sweep`] is an independent
//! brute-force path over reflection distance × orientation cells, used to
//! cross-check the closed form.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{
    reflect_bearing, reflect_point, virtual_point, MirrorLine, Pose2D, Ray, ReflectorState,
};
use crate::ranging::Observation;

/// A beacon at a surveyed position and its reflected observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeaconSpec {
    pub position: Pose2D,
    pub observation: Observation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Bisector of a single beacon's true and virtual positions.
    ClosedForm,
    /// Closed form refined over several beacons.
    LeastSquares,
    /// Best cell of the brute-force sweep.
    GridOracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Physical size assigned to the recovered reflector.
    pub reflector_size: f64,
    /// Largest accepted beacon residual, relative to the target's total range.
    pub max_residual_ratio: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            reflector_size: 18.2,
            max_residual_ratio: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    /// Reflector centred on the target's reflection point.
    pub reflector: ReflectorState,
    pub target: Pose2D,
    pub d1: f64,
    pub d2: f64,
    /// RMS beacon residual over the target's total range.
    pub residual_norm: f64,
    pub method: SolveMethod,
}

impl SolveResult {
    pub fn reflection_point(&self) -> Pose2D {
        self.reflector.center()
    }
}

/// The mirror line implied by one beacon: the perpendicular bisector of its
/// true position and its virtual image.
pub fn mirror_from_beacon(obs: Pose2D, beacon: &BeaconSpec) -> Result<MirrorLine> {
    let image = virtual_point(obs, beacon.observation.bearing, beacon.observation.estimated_range);
    let chord = image - beacon.position;
    let scale = image.norm().max(beacon.position.norm()).max(1.0);
    if chord.norm() <= 1e-12 * scale {
        return Err(Error::DegenerateBeacon);
    }
    Ok(MirrorLine::new(
        (image + beacon.position) * 0.5,
        chord.angle() + PI / 2.0,
    ))
}

/// Where `ray` meets the (infinite) mirror line.
pub fn reflection_point(m: &MirrorLine, ray: &Ray) -> Result<Pose2D> {
    let (t, _) = m.intersect_ray(ray)?;
    if t < 0.0 {
        return Err(Error::BehindObserver);
    }
    Ok(ray.at(t))
}

/// Places the target behind a known mirror line.
pub fn localize_target(
    obs: Pose2D,
    target_obs: &Observation,
    m: &MirrorLine,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let alpha = target_obs.bearing;
    let d_total = target_obs.estimated_range;
    let hit = reflection_point(m, &Ray::new(obs, alpha))?;
    let d1 = obs.distance(hit);
    if d_total < d1 - 1e-9 * d1.max(1.0) {
        return Err(Error::RangeTooShort { d_total, d1 });
    }
    let d2 = (d_total - d1).max(0.0);
    let line = MirrorLine::new(hit, m.orientation());
    let target = reflect_point(virtual_point(obs, alpha, d_total), &line);

    // forward model from the same quantities; differs only by rounding
    let forward = hit + reflect_bearing(alpha, &line).unit() * d2;
    let residual_norm = forward.distance(target) / d_total.max(f64::MIN_POSITIVE);

    Ok(SolveResult {
        reflector: ReflectorState::from_line(line, opts.reflector_size)?,
        target,
        d1,
        d2,
        residual_norm,
        method: SolveMethod::ClosedForm,
    })
}

/// Forward-model residual of one beacon against a candidate reflector:
/// x and y mismatch of the predicted beacon position, then total-range mismatch.
pub fn residual(candidate: &ReflectorState, obs: Pose2D, beacon: &BeaconSpec) -> Result<[f64; 3]> {
    let ray = Ray::new(obs, beacon.observation.bearing);
    let hit = candidate.hit(&ray).map_err(|_| Error::RayMissesReflector)?;
    Ok(residual_at(&candidate.line, hit, obs, beacon))
}

fn residual_at(line: &MirrorLine, hit: Pose2D, obs: Pose2D, beacon: &BeaconSpec) -> [f64; 3] {
    let d1 = obs.distance(hit);
    let d2 = beacon.position.distance(hit);
    let predicted = hit + reflect_bearing(beacon.observation.bearing, line).unit() * d2;
    [
        predicted.x - beacon.position.x,
        predicted.y - beacon.position.y,
        d1 + d2 - beacon.observation.estimated_range,
    ]
}

/// Residual against an unbounded line; `None` when the beacon ray misses it.
fn line_residual(line: &MirrorLine, obs: Pose2D, beacon: &BeaconSpec) -> Option<[f64; 3]> {
    let hit = reflection_point(line, &Ray::new(obs, beacon.observation.bearing)).ok()?;
    Some(residual_at(line, hit, obs, beacon))
}

/// Sum of squared beacon residuals for an unbounded line. Infinite when any
/// beacon ray misses the line.
pub fn line_cost(line: &MirrorLine, obs: Pose2D, beacons: &[BeaconSpec]) -> f64 {
    let mut cost = 0.0;
    for b in beacons {
        match line_residual(line, obs, b) {
            Some(r) => cost += r.iter().map(|x| x * x).sum::<f64>(),
            None => return f64::INFINITY,
        }
    }
    cost
}

fn residual_norm(line: &MirrorLine, obs: Pose2D, beacons: &[BeaconSpec], d_total: f64) -> f64 {
    (line_cost(line, obs, beacons) / beacons.len() as f64).sqrt() / d_total
}

/// Recovers the reflector from the beacons and localizes the target.
///
/// One beacon is solved in closed form. Several beacons are fitted by least
/// squares, starting from the best single-beacon closed form.
pub fn solve(
    obs: Pose2D,
    target_obs: &Observation,
    beacons: &[BeaconSpec],
    opts: &SolveOptions,
) -> Result<SolveResult> {
    if beacons.is_empty() {
        return Err(Error::NoBeacons);
    }
    let mut first_err = None;
    let mut best: Option<(MirrorLine, f64)> = None;
    for b in beacons {
        match mirror_from_beacon(obs, b) {
            Ok(line) => {
                let cost = line_cost(&line, obs, beacons);
                if best.is_none_or(|(_, c)| cost < c) {
                    best = Some((line, cost));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    let Some((mut line, _)) = best else {
        return Err(first_err.unwrap_or(Error::NoBeacons));
    };
    let method = if beacons.len() == 1 {
        SolveMethod::ClosedForm
    } else {
        line = refine_line(line, obs, beacons);
        SolveMethod::LeastSquares
    };

    let mut result = localize_target(obs, target_obs, &line, opts)?;
    let norm = residual_norm(&result.reflector.line, obs, beacons, target_obs.estimated_range);
    if !(norm <= opts.max_residual_ratio) {
        return Err(Error::Inconsistent {
            residual: norm,
            threshold: opts.max_residual_ratio,
        });
    }
    result.residual_norm = norm;
    result.method = method;
    Ok(result)
}

/// Line in normal form: `{p : p·n(θ) = ρ}` with `n(θ) = (-sin θ, cos θ)`.
fn line_from_params(theta: f64, rho: f64) -> MirrorLine {
    let n = Pose2D::unit(theta).perp();
    MirrorLine::new(n * rho, theta)
}

fn residual_vector(theta: f64, rho: f64, obs: Pose2D, beacons: &[BeaconSpec]) -> Option<Vec<f64>> {
    let line = line_from_params(theta, rho);
    let mut out = Vec::with_capacity(3 * beacons.len());
    for b in beacons {
        out.extend(line_residual(&line, obs, b)?);
    }
    Some(out)
}

/// Levenberg-Marquardt over (θ, ρ) with a central-difference Jacobian.
fn refine_line(start: MirrorLine, obs: Pose2D, beacons: &[BeaconSpec]) -> MirrorLine {
    const MAX_ITER: usize = 200;
    let sq = |r: &[f64]| r.iter().map(|x| x * x).sum::<f64>();

    let mut theta = start.orientation();
    let mut rho = start.point.dot(start.normal());
    let Some(mut r) = residual_vector(theta, rho, obs, beacons) else {
        return start;
    };
    let mut cost = sq(&r);
    let mut lambda = 1e-3;

    for _ in 0..MAX_ITER {
        if cost == 0.0 {
            break;
        }
        let h_theta = 1e-7;
        let h_rho = 1e-7 * rho.abs().max(1.0);
        let (Some(tp), Some(tm), Some(rp), Some(rm)) = (
            residual_vector(theta + h_theta, rho, obs, beacons),
            residual_vector(theta - h_theta, rho, obs, beacons),
            residual_vector(theta, rho + h_rho, obs, beacons),
            residual_vector(theta, rho - h_rho, obs, beacons),
        ) else {
            break;
        };
        // J^T J and J^T r for the two columns
        let (mut a11, mut a12, mut a22, mut g1, mut g2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for k in 0..r.len() {
            let j1 = (tp[k] - tm[k]) / (2.0 * h_theta);
            let j2 = (rp[k] - rm[k]) / (2.0 * h_rho);
            a11 += j1 * j1;
            a12 += j1 * j2;
            a22 += j2 * j2;
            g1 += j1 * r[k];
            g2 += j2 * r[k];
        }

        let mut improved = false;
        while lambda < 1e12 {
            let m11 = a11 * (1.0 + lambda) + 1e-30;
            let m22 = a22 * (1.0 + lambda) + 1e-30;
            let det = m11 * m22 - a12 * a12;
            if det == 0.0 || !det.is_finite() {
                lambda *= 10.0;
                continue;
            }
            let dt = -(m22 * g1 - a12 * g2) / det;
            let dr = -(m11 * g2 - a12 * g1) / det;
            if let Some(r_new) = residual_vector(theta + dt, rho + dr, obs, beacons) {
                let c_new = sq(&r_new);
                if c_new < cost {
                    let small = dt.abs() < 1e-15 && dr.abs() < 1e-13 * rho.abs().max(1.0);
                    theta += dt;
                    rho += dr;
                    r = r_new;
                    let rel = (cost - c_new) / cost;
                    cost = c_new;
                    lambda = (lambda / 10.0).max(1e-12);
                    improved = !small && rel > 1e-15;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    line_from_params(theta, rho)
}

/// Outcome of the brute-force sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSweep {
    /// Distance of the winning candidate reflection point along the target ray.
    pub distance: f64,
    pub orientation: f64,
    pub cost: f64,
    pub cells: usize,
    pub result: SolveResult,
}

/// Exhaustive search over candidate reflectors: reflection points every
/// `step` along the target ray (from the observer out to the target's total
/// range) crossed with orientations every `theta_step` over [0, π). The cell
/// with the smallest summed squared beacon residual wins; ties go to the
/// lowest cell index, so the result does not depend on `exec`.
pub fn grid_sweep(
    obs: Pose2D,
    target_obs: &Observation,
    beacons: &[BeaconSpec],
    step: f64,
    theta_step: f64,
    opts: &SolveOptions,
    exec: Execution,
) -> Result<GridSweep> {
    if beacons.is_empty() {
        return Err(Error::NoBeacons);
    }
    if !(step > 0.0) || !(theta_step > 0.0) {
        return Err(Error::NonPositiveStep);
    }
    let d_total = target_obs.estimated_range;
    let n_d = (d_total / step + 1e-9).floor() as usize + 1;
    let n_theta = (PI / theta_step - 1e-9).ceil() as usize;
    let ray = Ray::new(obs, target_obs.bearing);
    let cell = |i: usize| (i / n_theta, i % n_theta);
    let candidate = |i: usize| {
        let (k, j) = cell(i);
        MirrorLine::new(ray.at(k as f64 * step), j as f64 * theta_step)
    };

    let (best, cost) = exec
        .argmin(n_d * n_theta, |i| line_cost(&candidate(i), obs, beacons))
        .ok_or(Error::NoBeacons)?;
    let (k, j) = cell(best);
    let line = candidate(best);
    let mut result = localize_target(obs, target_obs, &line, opts)?;
    result.residual_norm = residual_norm(&line, obs, beacons, d_total);
    result.method = SolveMethod::GridOracle;
    Ok(GridSweep {
        distance: k as f64 * step,
        orientation: j as f64 * theta_step,
        cost,
        cells: n_d * n_theta,
        result,
    })
}

/// Orientation sweep with the reflection point held at `anchor`. Returns the
/// best orientation on the `theta_step` grid and its cost.
pub fn orientation_sweep(
    obs: Pose2D,
    anchor: Pose2D,
    beacons: &[BeaconSpec],
    theta_step: f64,
    exec: Execution,
) -> Result<(f64, f64)> {
    if !(theta_step > 0.0) {
        return Err(Error::NonPositiveStep);
    }
    let n_theta = (PI / theta_step - 1e-9).ceil() as usize;
    let (j, cost) = exec
        .argmin(n_theta, |j| {
            line_cost(&MirrorLine::new(anchor, j as f64 * theta_step), obs, beacons)
        })
        .ok_or(Error::NoBeacons)?;
    Ok((j as f64 * theta_step, cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{orientation_distance, Bearing};
    use approx::assert_abs_diff_eq;

    fn observe(obs: Pose2D, m: &MirrorLine, p: Pose2D) -> Observation {
        let image = reflect_point(p, m);
        Observation::with_range(Bearing::towards(obs, image), obs.distance(image)).unwrap()
    }

    fn beacon(obs: Pose2D, m: &MirrorLine, p: Pose2D) -> BeaconSpec {
        BeaconSpec {
            position: p,
            observation: observe(obs, m, p),
        }
    }

    fn flat_mirror() -> (MirrorLine, Pose2D, Pose2D) {
        (
            MirrorLine::new(Pose2D::new(15.5, 34.0), 0.0),
            Pose2D::new(23.5, 16.4),
            Pose2D::new(18.2, 0.0),
        )
    }

    #[test]
    fn mirror_from_horizontal_bisector() {
        let b = BeaconSpec {
            position: Pose2D::new(18.2, 0.0),
            observation: Observation::with_range(
                Bearing::towards(Pose2D::ORIGIN, Pose2D::new(18.2, 68.0)),
                Pose2D::new(18.2, 68.0).norm(),
            )
            .unwrap(),
        };
        let m = mirror_from_beacon(Pose2D::ORIGIN, &b).unwrap();
        assert_abs_diff_eq!(m.orientation(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.point.y, 34.0, epsilon = 1e-12);
    }

    #[test]
    fn mirror_round_trip() {
        let obs = Pose2D::new(-3.0, 2.0);
        let m = MirrorLine::new(Pose2D::new(10.0, 20.0), 2.1);
        let b = beacon(obs, &m, Pose2D::new(4.0, 5.0));
        let got = mirror_from_beacon(obs, &b).unwrap();
        assert!(orientation_distance(got.orientation(), m.orientation()) < 1e-9);
        assert_abs_diff_eq!(got.origin_distance(), m.origin_distance(), epsilon = 1e-9);
    }

    #[test]
    fn beacon_on_mirror_is_degenerate() {
        let (m, _, _) = flat_mirror();
        let b = beacon(Pose2D::ORIGIN, &m, Pose2D::new(12.0, 34.0));
        assert_eq!(mirror_from_beacon(Pose2D::ORIGIN, &b), Err(Error::DegenerateBeacon));
    }

    #[test]
    fn reflection_point_cases() {
        let (m, _, _) = flat_mirror();
        let ray = Ray::new(Pose2D::ORIGIN, Bearing::from_degrees(65.5));
        let r = reflection_point(&m, &ray).unwrap();
        assert!(r.distance(Pose2D::new(15.5, 34.0)) < 0.1, "{r:?}");

        let slanted = MirrorLine::new(Pose2D::new(3.0, 4.0), 0.4);
        let from = slanted.point + slanted.normal() * 7.0;
        let along_normal = Ray::new(from, Bearing::new((-slanted.normal()).angle()));
        let r = reflection_point(&slanted, &along_normal).unwrap();
        assert!(r.distance(slanted.point) < 1e-12);

        let parallel = Ray::new(Pose2D::ORIGIN, Bearing::new(0.0));
        assert_eq!(reflection_point(&m, &parallel), Err(Error::RayParallel));
        let behind = Ray::new(Pose2D::ORIGIN, Bearing::from_degrees(-90.0));
        assert_eq!(reflection_point(&m, &behind), Err(Error::BehindObserver));
    }

    #[test]
    fn localize_flat_mirror_chain() {
        let (m, _, _) = flat_mirror();
        let alpha = Bearing::towards(Pose2D::ORIGIN, Pose2D::new(15.5, 34.0));
        let o = Observation::with_range(alpha, 56.70).unwrap();
        let res = localize_target(Pose2D::ORIGIN, &o, &m, &SolveOptions::default()).unwrap();
        assert!(res.target.distance(Pose2D::new(23.5, 16.4)) < 0.2, "{:?}", res.target);
        assert_abs_diff_eq!(res.d1, 37.37, epsilon = 0.01);
        assert_abs_diff_eq!(res.d2, 19.33, epsilon = 0.01);
        assert!(res.residual_norm < 1e-12);
    }

    #[test]
    fn localize_tilted_mirror_chain() {
        let m = MirrorLine::new(Pose2D::new(27.5, 65.0), 38f64.to_radians());
        let alpha = Bearing::towards(Pose2D::ORIGIN, Pose2D::new(27.5, 65.0));
        let o = Observation::with_range(alpha, 98.53).unwrap();
        let res = localize_target(Pose2D::ORIGIN, &o, &m, &SolveOptions::default()).unwrap();
        assert!(res.target.distance(Pose2D::new(55.0, 70.0)) < 1.5, "{:?}", res.target);
    }

    #[test]
    fn range_equal_to_first_leg_lands_on_mirror() {
        let (m, _, _) = flat_mirror();
        let alpha = Bearing::towards(Pose2D::ORIGIN, Pose2D::new(15.5, 34.0));
        let d1 = Pose2D::new(15.5, 34.0).norm();
        let o = Observation::with_range(alpha, d1).unwrap();
        let res = localize_target(Pose2D::ORIGIN, &o, &m, &SolveOptions::default()).unwrap();
        assert!(res.target.distance(Pose2D::new(15.5, 34.0)) < 1e-9);
        assert!(res.d2.abs() < 1e-9);

        let short = Observation::with_range(alpha, d1 - 1.0).unwrap();
        assert!(matches!(
            localize_target(Pose2D::ORIGIN, &short, &m, &SolveOptions::default()),
            Err(Error::RangeTooShort { .. })
        ));
    }

    #[test]
    fn one_and_two_beacon_solves_agree() {
        let (m, target, b0) = flat_mirror();
        let obs = Pose2D::ORIGIN;
        let t = observe(obs, &m, target);
        let b1 = beacon(obs, &m, b0);
        let b2 = beacon(obs, &m, Pose2D::new(10.0, 5.0));
        let opts = SolveOptions::default();
        let one = solve(obs, &t, &[b1], &opts).unwrap();
        let two = solve(obs, &t, &[b1, b2], &opts).unwrap();
        assert_eq!(one.method, SolveMethod::ClosedForm);
        assert_eq!(two.method, SolveMethod::LeastSquares);
        assert!(one.target.distance(target) < 1e-9);
        assert!(two.target.distance(one.target) < 1e-9);
        assert!(two.residual_norm < 1e-9);
        assert!(orientation_distance(two.reflector.orientation(), 0.0) < 1e-9);
    }

    #[test]
    fn solve_errors() {
        let (m, target, _) = flat_mirror();
        let t = observe(Pose2D::ORIGIN, &m, target);
        let opts = SolveOptions::default();
        assert_eq!(solve(Pose2D::ORIGIN, &t, &[], &opts), Err(Error::NoBeacons));

        // second beacon reflected in a different mirror
        let other = MirrorLine::new(Pose2D::new(15.5, 40.0), 0.3);
        let good = beacon(Pose2D::ORIGIN, &m, Pose2D::new(18.2, 0.0));
        let bad = beacon(Pose2D::ORIGIN, &other, Pose2D::new(5.0, 10.0));
        assert!(matches!(
            solve(Pose2D::ORIGIN, &t, &[good, bad], &opts),
            Err(Error::Inconsistent { .. })
        ));
    }

    #[test]
    fn least_squares_pulls_toward_consensus() {
        // three beacons, one with a perturbed range: fit beats each single closed form
        let obs = Pose2D::new(1.0, -1.0);
        let m = MirrorLine::new(Pose2D::new(20.0, 30.0), 0.5);
        let pts = [Pose2D::new(10.0, 12.0), Pose2D::new(22.0, 15.0), Pose2D::new(30.0, 20.0)];
        let mut beacons: Vec<_> = pts.iter().map(|&p| beacon(obs, &m, p)).collect();
        beacons[1].observation.estimated_range += 0.3;
        let t = observe(obs, &m, Pose2D::new(16.0, 14.0));
        let opts = SolveOptions::default();
        let fit = solve(obs, &t, &beacons, &opts).unwrap();
        let fit_cost = line_cost(&fit.reflector.line, obs, &beacons);
        for b in &beacons {
            let single = mirror_from_beacon(obs, b).unwrap();
            assert!(fit_cost <= line_cost(&single, obs, &beacons) + 1e-12);
        }
        assert!(fit.residual_norm > 0.0);
    }

    #[test]
    fn residual_vanishes_at_truth() {
        let (m, _, b0) = flat_mirror();
        let refl = ReflectorState::from_line(m, 18.2).unwrap();
        let b = beacon(Pose2D::ORIGIN, &m, b0);
        let r = residual(&refl, Pose2D::ORIGIN, &b).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-12), "{r:?}");

        let tiny = ReflectorState::new(Pose2D::new(30.0, 34.0), 0.0, 1.0).unwrap();
        assert_eq!(residual(&tiny, Pose2D::ORIGIN, &b), Err(Error::RayMissesReflector));
    }

    #[test]
    fn residual_is_smooth_in_orientation() {
        // central difference at two step sizes agree: the residual is differentiable
        let (m, _, b0) = flat_mirror();
        let b = beacon(Pose2D::ORIGIN, &m, b0);
        let at = |dtheta: f64| {
            let refl = ReflectorState::new(m.point, dtheta, 18.2).unwrap();
            residual(&refl, Pose2D::ORIGIN, &b).unwrap()
        };
        let delta = 1e-5;
        for c in 0..3 {
            let coarse = (at(delta + 1e-5)[c] - at(delta - 1e-5)[c]) / 2e-5;
            let fine = (at(delta + 1e-6)[c] - at(delta - 1e-6)[c]) / 2e-6;
            assert!((coarse - fine).abs() < 1e-4 * coarse.abs().max(1.0), "{c}: {coarse} vs {fine}");
        }
        assert!(at(delta).iter().any(|x| x.abs() > 1e-6));
    }

    #[test]
    fn grid_sweep_brackets_closed_form() {
        let (m, target, b0) = flat_mirror();
        let obs = Pose2D::ORIGIN;
        let t = observe(obs, &m, target);
        let b = [beacon(obs, &m, b0)];
        let step = 18.2 / (4.0 * 5f64.to_radians().cos());
        let opts = SolveOptions::default();
        let seq = grid_sweep(obs, &t, &b, step, 0.5f64.to_radians(), &opts, Execution::Sequential).unwrap();
        let par = grid_sweep(obs, &t, &b, step, 0.5f64.to_radians(), &opts, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.result.method, SolveMethod::GridOracle);
        let d1 = Pose2D::new(15.5, 34.0).norm();
        assert!((seq.distance - d1).abs() <= step);
        let closed = solve(obs, &t, &b, &opts).unwrap();
        assert!(line_cost(&closed.reflector.line, obs, &b) <= seq.cost + 1e-9);

        let (theta, _) = orientation_sweep(obs, closed.reflection_point(), &b, 0.5f64.to_radians(), Execution::Parallel)
            .unwrap();
        assert!(orientation_distance(theta, 0.0) <= 0.5f64.to_radians());
    }
}
