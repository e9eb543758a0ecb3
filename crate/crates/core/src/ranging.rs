//! Range from apparent size.
//!
//! The product of apparent size and distance is constant for a given object.
//! Calibrating it once at a reference distance turns every later size
//! measurement into a range. Sizes can be lengths or pixel counts as long as
//! the reference and the measurement use the same unit; mixing them is a
//! caller error the types cannot catch.

use crate::error::{Error, Result};
use crate::geometry::Bearing;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeConstancy {
    reference_size: f64,
    reference_distance: f64,
    constant: f64,
}

impl SizeConstancy {
    pub fn from_reference(reference_size: f64, reference_distance: f64) -> Result<Self> {
        positive(reference_size, "reference size")?;
        positive(reference_distance, "reference distance")?;
        Ok(Self {
            reference_size,
            reference_distance,
            constant: reference_size * reference_distance,
        })
    }

    pub fn reference_size(&self) -> f64 {
        self.reference_size
    }

    pub fn reference_distance(&self) -> f64 {
        self.reference_distance
    }

    /// Size × distance.
    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn estimate_range(&self, apparent_size: f64) -> Result<f64> {
        estimate_range(apparent_size, self)
    }
}

/// Distance at which an object of the calibrated kind appears `apparent_size` large.
pub fn estimate_range(apparent_size: f64, constancy: &SizeConstancy) -> Result<f64> {
    positive(apparent_size, "apparent size")?;
    Ok(constancy.constant / apparent_size)
}

fn positive(v: f64, what: &'static str) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFinite(what));
    }
    if v <= 0.0 {
        return Err(Error::NonPositiveInput(what));
    }
    Ok(())
}

/// One reflected sighting: the bearing of the image and the total path length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub bearing: Bearing,
    pub apparent_size: Option<f64>,
    pub estimated_range: f64,
}

impl Observation {
    /// An observation whose range is already known.
    pub fn with_range(bearing: Bearing, range: f64) -> Result<Self> {
        positive(range, "range")?;
        Ok(Self {
            bearing,
            apparent_size: None,
            estimated_range: range,
        })
    }

    /// An observation ranged from its apparent size.
    pub fn from_size(bearing: Bearing, apparent_size: f64, constancy: &SizeConstancy) -> Result<Self> {
        let range = estimate_range(apparent_size, constancy)?;
        Ok(Self {
            bearing,
            apparent_size: Some(apparent_size),
            estimated_range: range,
        })
    }
}
