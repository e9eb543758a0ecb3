//! Planar points, bearings, mirror lines and one-bounce reflection.
//!
//! Angles are radians in the world frame. Bearings are kept in (-π, π],
//! line orientations in [0, π). Intersections use a parametric
//! (cross-product) form throughout, so vertical rays need no special casing.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Below this |sin(angle between)| two directions count as parallel.
pub const PARALLEL_TOLERANCE: f64 = 1e-12;

/// A point (or displacement) in the plane, in centimetres.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pose2D {
    pub x: f64,
    pub y: f64,
}

impl Pose2D {
    pub const ORIGIN: Pose2D = Pose2D { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::NonFinite("coordinate"))
        }
    }

    /// Unit vector along `angle`.
    pub fn unit(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self { x: c, y: s }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Self {
        Self {
            x: -self.y,
            y: self.x,
        }
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotates about the origin by `angle`.
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Pose2D {
    type Output = Pose2D;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Pose2D {
    type Output = Pose2D;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Pose2D {
    type Output = Pose2D;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl Neg for Pose2D {
    type Output = Pose2D;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Wraps an angle into (-π, π].
pub fn normalize_bearing(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    a
}

/// Wraps an angle into [0, π).
pub fn normalize_orientation(angle: f64) -> f64 {
    let a = angle.rem_euclid(PI);
    // rem_euclid can round up to exactly π for tiny negative inputs
    if a >= PI {
        0.0
    } else {
        a
    }
}

/// Smallest absolute difference between two line orientations, in [0, π/2].
pub fn orientation_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// A world-frame direction in (-π, π].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Bearing(f64);

impl Bearing {
    pub fn new(radians: f64) -> Self {
        Self(normalize_bearing(radians))
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Self::new(degrees.to_radians())
    }

    /// Bearing from `from` towards `to`.
    pub fn towards(from: Pose2D, to: Pose2D) -> Self {
        Self::new((to - from).angle())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn unit(self) -> Pose2D {
        Pose2D::unit(self.0)
    }

    pub fn rotated(self, delta: f64) -> Self {
        Self::new(self.0 + delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Pose2D,
    pub direction: Bearing,
}

impl Ray {
    pub fn new(origin: Pose2D, direction: Bearing) -> Self {
        Self { origin, direction }
    }

    pub fn at(&self, t: f64) -> Pose2D {
        self.origin + self.direction.unit() * t
    }
}

/// An infinite line, stored as a point on it and an orientation in [0, π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorLine {
    pub point: Pose2D,
    orientation: f64,
}

impl MirrorLine {
    pub fn new(point: Pose2D, orientation: f64) -> Self {
        Self {
            point,
            orientation: normalize_orientation(orientation),
        }
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn direction(&self) -> Pose2D {
        Pose2D::unit(self.orientation)
    }

    /// Unit normal (direction rotated by +90°).
    pub fn normal(&self) -> Pose2D {
        self.direction().perp()
    }

    /// Signed distance of `p` from the line, positive on the normal side.
    pub fn signed_distance(&self, p: Pose2D) -> f64 {
        (p - self.point).dot(self.normal())
    }

    /// Distance from the world origin to the line.
    pub fn origin_distance(&self) -> f64 {
        self.signed_distance(Pose2D::ORIGIN).abs()
    }

    /// Same line, re-anchored at the foot of the perpendicular from `p`.
    pub fn anchored_near(&self, p: Pose2D) -> Self {
        let d = self.direction();
        Self {
            point: self.point + d * (p - self.point).dot(d),
            orientation: self.orientation,
        }
    }

    /// Ray parameter `t` and line parameter `s` (along [`Self::direction`]
    /// from [`Self::point`]) of the crossing with `ray`.
    pub fn intersect_ray(&self, ray: &Ray) -> Result<(f64, f64)> {
        intersect_lines(ray.origin, ray.direction.unit(), self.point, self.direction())
            .ok_or(Error::RayParallel)
    }
}

/// Solves `p + t·u = q + s·v` for (t, s). `None` when `u` and `v` are parallel.
pub fn intersect_lines(p: Pose2D, u: Pose2D, q: Pose2D, v: Pose2D) -> Option<(f64, f64)> {
    let denom = u.cross(v);
    let scale = u.norm() * v.norm();
    if scale == 0.0 || (denom / scale).abs() < PARALLEL_TOLERANCE {
        return None;
    }
    let w = q - p;
    Some((w.cross(v) / denom, w.cross(u) / denom))
}

/// A finite planar reflector centred on `line.point`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectorState {
    pub line: MirrorLine,
    size: f64,
}

impl ReflectorState {
    pub fn new(center: Pose2D, orientation: f64, size: f64) -> Result<Self> {
        Self::from_line(MirrorLine::new(center, orientation), size)
    }

    pub fn from_line(line: MirrorLine, size: f64) -> Result<Self> {
        if !(size > 0.0) || !size.is_finite() {
            return Err(Error::NonPositiveInput("reflector size"));
        }
        if !line.point.is_finite() || !line.orientation.is_finite() {
            return Err(Error::NonFinite("reflector"));
        }
        Ok(Self { line, size })
    }

    pub fn center(&self) -> Pose2D {
        self.line.point
    }

    pub fn orientation(&self) -> f64 {
        self.line.orientation()
    }

    pub fn size(&self) -> f64 {
        self.size
    }

    pub fn endpoints(&self) -> [Pose2D; 2] {
        let half = self.line.direction() * (self.size / 2.0);
        [self.center() - half, self.center() + half]
    }

    /// Point where `ray` meets the finite reflector.
    pub fn hit(&self, ray: &Ray) -> Result<Pose2D> {
        let (t, s) = self.line.intersect_ray(ray)?;
        let half = self.size / 2.0;
        let slack = 1e-9 * half.max(1.0);
        if t < 0.0 || s.abs() > half + slack {
            return Err(Error::RayMissesReflector);
        }
        Ok(ray.at(t))
    }
}

/// Mirror image of `p` across the infinite line `m`.
pub fn reflect_point(p: Pose2D, m: &MirrorLine) -> Pose2D {
    let dir = m.direction();
    let v = p - m.point;
    m.point + dir * (2.0 * v.dot(dir)) - v
}

/// Direction of a ray with bearing `incident` after bouncing off `m`.
pub fn reflect_bearing(incident: Bearing, m: &MirrorLine) -> Bearing {
    Bearing::new(2.0 * m.orientation() - incident.radians())
}

/// Target position reached by travelling `d2` past the reflection point of
/// the ray `(obs, alpha)` on `reflector`.
pub fn forward_target(
    obs: Pose2D,
    alpha: Bearing,
    reflector: &ReflectorState,
    d2: f64,
) -> Result<Pose2D> {
    let hit = reflector.hit(&Ray::new(obs, alpha))?;
    Ok(hit + reflect_bearing(alpha, &reflector.line).unit() * d2)
}

/// Leg lengths of the path observer → reflection point → target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSplit {
    pub d1: f64,
    pub d2: f64,
    pub d_total: f64,
}

pub fn path_split(obs: Pose2D, reflection: Pose2D, target: Pose2D) -> PathSplit {
    let d1 = obs.distance(reflection);
    let d2 = target.distance(reflection);
    PathSplit {
        d1,
        d2,
        d_total: d1 + d2,
    }
}

/// Where the target appears to be: `d_total` along `alpha` from `obs`.
pub fn virtual_point(obs: Pose2D, alpha: Bearing, d_total: f64) -> Pose2D {
    obs + alpha.unit() * d_total
}
