//! Paths for a single moving beacon that visits every placement station.
//!
//! Stations are `b` apart along an axis and each has two beacon spots `a`
//! apart across it. Three path shapes cover them:
//!
//! - linear: down one side, cross once, back up the other side;
//! - rectangular: cross at every station, step along the side it ends on;
//! - saw-tooth: cross at every station, then jump diagonally to the next
//!   station on the starting side.
//!
//! For `b > a` the rectangular path is the shortest of the three. The
//! saw-tooth path only undercuts the linear one once `b > 4a/3`.

use crate::error::{Error, Result};
use crate::geometry::{Pose2D, Ray};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    Linear,
    Rectangular,
    SawTooth,
}

impl PathKind {
    pub const ALL: [PathKind; 3] = [PathKind::Linear, PathKind::Rectangular, PathKind::SawTooth];

    pub fn name(self) -> &'static str {
        match self {
            PathKind::Linear => "linear",
            PathKind::Rectangular => "rectangular",
            PathKind::SawTooth => "saw-tooth",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathPlan {
    pub kind: PathKind,
    pub waypoints: Vec<Pose2D>,
    pub total_length: f64,
    /// Pair separation.
    pub a: f64,
    /// Station spacing.
    pub b: f64,
    pub n: usize,
}

fn check(a: f64, b: f64, n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidCount(n));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::NonPositiveInput("pair separation"));
    }
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::NonPositiveInput("station spacing"));
    }
    Ok(())
}

/// Closed-form length of a path over `n` stations.
pub fn path_length(kind: PathKind, a: f64, b: f64, n: usize) -> Result<f64> {
    check(a, b, n)?;
    let steps = (n - 1) as f64;
    Ok(match kind {
        PathKind::Linear => a + 2.0 * steps * b,
        PathKind::Rectangular => a + steps * (a + b),
        PathKind::SawTooth => a + steps * (a + a.hypot(b)),
    })
}

/// Polyline through all `2n` beacon spots, starting at `start`.
///
/// Consecutive stations are `b` apart *against* `axis.direction`; the far
/// side of each pair is `a` across the axis from the side `start` is on.
pub fn generate_waypoints(
    kind: PathKind,
    start: Pose2D,
    axis: &Ray,
    a: f64,
    b: f64,
    n: usize,
) -> Result<PathPlan> {
    check(a, b, n)?;
    let along = axis.direction.unit();
    let normal = along.perp();
    let offset = (start - axis.origin).dot(normal);
    let cross = if offset > 0.0 { -normal * a } else { normal * a };
    let step = -along * b;

    // spot on the start side / far side of station i
    let near = |i: usize| start + step * i as f64;
    let far = |i: usize| near(i) + cross;

    let waypoints: Vec<Pose2D> = match kind {
        PathKind::Linear => (0..n).map(near).chain((0..n).rev().map(far)).collect(),
        PathKind::Rectangular => (0..n)
            .flat_map(|i| {
                if i % 2 == 0 {
                    [near(i), far(i)]
                } else {
                    [far(i), near(i)]
                }
            })
            .collect(),
        PathKind::SawTooth => (0..n).flat_map(|i| [near(i), far(i)]).collect(),
    };

    let total_length = waypoints.windows(2).map(|w| w[0].distance(w[1])).sum();
    Ok(PathPlan {
        kind,
        waypoints,
        total_length,
        a,
        b,
        n,
    })
}

/// The shortest of the three path kinds for the given layout.
pub fn shortest(a: f64, b: f64, n: usize) -> Result<PathKind> {
    let mut best = (PathKind::Linear, f64::INFINITY);
    for kind in PathKind::ALL {
        let len = path_length(kind, a, b, n)?;
        if len < best.1 {
            best = (kind, len);
        }
    }
    Ok(best.0)
}
