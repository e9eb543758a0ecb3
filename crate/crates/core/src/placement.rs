//! Beacon placement along the observation ray.
//!
//! The unknown reflector sits somewhere on the ray from the observer towards
//! the target's image. The ray is cut into steps of length `b`; at each step a
//! pair of beacons, one on each side of the ray, is placed inside a right
//! triangle whose legs are `b` (back along the ray) and `a/2` (across it).
//!
//! Both lengths come from the same construction. Tilt the reflector by `ε`
//! away from the observation line, take its edge point `C`, and follow the
//! line reflected through `C`. Where that line crosses the observation ray
//! gives `b`; where it crosses the perpendicular through the reflection point
//! gives `a/2`. The construction is relative to the ray, so neither length
//! depends on the total distance or on the ray's bearing.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::geometry::{intersect_lines, Bearing, Pose2D};

/// Tilts at or below this are treated as zero.
pub const EPSILON_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementParams {
    pub alpha: Bearing,
    pub d_total: f64,
    pub reflector_size: f64,
    /// Maximum reflector tilt relative to the observation line, radians.
    pub epsilon: f64,
}

impl PlacementParams {
    pub fn new(alpha: Bearing, d_total: f64, reflector_size: f64, epsilon: f64) -> Result<Self> {
        if !d_total.is_finite() || !reflector_size.is_finite() || !epsilon.is_finite() {
            return Err(Error::NonFinite("placement parameter"));
        }
        if d_total <= 0.0 {
            return Err(Error::NonPositiveInput("total distance"));
        }
        if reflector_size <= 0.0 {
            return Err(Error::NonPositiveInput("reflector size"));
        }
        Ok(Self {
            alpha,
            d_total,
            reflector_size,
            epsilon,
        })
    }

    /// Candidate reflection point at the full distance, observer at the origin.
    fn far_point(&self) -> Pose2D {
        self.alpha.unit() * self.d_total
    }

    /// Bearing of the line reflected through the reflector edge.
    fn edge_line_bearing(&self) -> f64 {
        self.alpha.radians() - 2.0 * self.epsilon
    }

    fn check_epsilon(&self) -> Result<()> {
        if self.epsilon <= EPSILON_TOLERANCE {
            Err(Error::DegenerateEpsilon)
        } else {
            Ok(())
        }
    }
}

/// Edge point `C` of a reflector of the given size centred at distance
/// `d_total` along the ray and tilted `ε` from it. Observer at the origin.
pub fn edge_point(params: &PlacementParams) -> Pose2D {
    let world_tilt = params.alpha.radians() - params.epsilon;
    params.far_point() - Pose2D::unit(world_tilt) * (params.reflector_size / 2.0)
}

/// Step `b` between consecutive candidate reflection points.
pub fn step_size(params: &PlacementParams) -> Result<f64> {
    params.check_epsilon()?;
    let c = edge_point(params);
    let (_, along_ray) = intersect_lines(
        c,
        Pose2D::unit(params.edge_line_bearing()),
        Pose2D::ORIGIN,
        params.alpha.unit(),
    )
    .ok_or(Error::DegenerateEpsilon)?;
    Ok((params.alpha.unit() * along_ray).distance(params.far_point()))
}

/// Half width `a/2` of the placement region across the ray.
pub fn lateral_half_extent(params: &PlacementParams) -> Result<f64> {
    params.check_epsilon()?;
    if params.epsilon >= FRAC_PI_4 {
        return Err(Error::DegenerateGeometry(
            "epsilon >= 45 deg: edge line parallel to the perpendicular",
        ));
    }
    let r = params.far_point();
    let c = edge_point(params);
    let (_, across) = intersect_lines(
        c,
        Pose2D::unit(params.edge_line_bearing()),
        r,
        params.alpha.unit().perp(),
    )
    .ok_or(Error::DegenerateGeometry("edge line parallel to the perpendicular"))?;
    Ok(across.abs())
}

/// Number of stations needed to cover `d_total` in steps of `step`.
pub fn station_count(d_total: f64, step: f64) -> Result<usize> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::NonPositiveStep);
    }
    if !d_total.is_finite() {
        return Err(Error::NonFinite("total distance"));
    }
    if d_total < 0.0 {
        return Err(Error::NonPositiveInput("total distance"));
    }
    let q = d_total / step;
    // a quotient that is integral up to rounding must not gain a station
    Ok((q - 1e-9 * q.max(1.0)).ceil().max(0.0) as usize)
}

/// Two beacons per station.
pub fn beacon_count(d_total: f64, step: f64) -> Result<usize> {
    Ok(2 * station_count(d_total, step)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Station {
    /// 1-based, counted outwards from the observer.
    pub index: usize,
    pub distance: f64,
    pub reflection: Pose2D,
    /// `[right, left]` of the ray direction.
    pub beacons: [Pose2D; 2],
    /// Region triangles, same order as `beacons`: right-angle vertex at the
    /// reflection point, then the vertex back along the ray, then the vertex
    /// across it.
    pub regions: [[Pose2D; 3]; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementPlan {
    pub observer: Pose2D,
    pub params: PlacementParams,
    pub step_size: f64,
    pub lateral_half_extent: f64,
    pub beacon_count: usize,
    pub stations: Vec<Station>,
}

impl PlacementPlan {
    pub fn beacons(&self) -> impl Iterator<Item = Pose2D> + '_ {
        self.stations.iter().flat_map(|s| s.beacons)
    }

    /// Distance between the two beacons of a pair.
    pub fn pair_separation(&self) -> f64 {
        self.lateral_half_extent * 2.0 / 3.0
    }
}

pub fn build_plan(observer: Pose2D, params: &PlacementParams) -> Result<PlacementPlan> {
    let step = step_size(params)?;
    let half = lateral_half_extent(params)?;
    let n = station_count(params.d_total, step)?;
    let along = params.alpha.unit();
    let across = along.perp();

    let stations = (1..=n)
        .map(|index| {
            let distance = index as f64 * step;
            let reflection = observer + along * distance;
            let back = reflection - along * step;
            let region = |side: f64| [reflection, back, reflection + across * (side * half)];
            let regions = [region(-1.0), region(1.0)];
            let beacons = regions.map(|[p, q, r]| (p + q + r) * (1.0 / 3.0));
            Station {
                index,
                distance,
                reflection,
                beacons,
                regions,
            }
        })
        .collect();

    Ok(PlacementPlan {
        observer,
        params: *params,
        step_size: step,
        lateral_half_extent: half,
        beacon_count: 2 * n,
        stations,
    })
}
