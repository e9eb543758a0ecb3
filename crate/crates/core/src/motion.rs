//! Velocity motion model for a moving beacon.
//!
//! Only translation is modelled. The commanded heading is taken as exact and
//! the travelled distance is the commanded `v·Δt` plus zero-mean Gaussian
//! noise. Sampling draws candidate next poses from that distribution; the
//! weighting and resampling half of a particle filter is not part of it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{Bearing, Pose2D};

/// Samples drawn from one RNG stream.
const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionCommand {
    pub velocity: f64,
    pub duration: f64,
    pub heading: Bearing,
}

impl MotionCommand {
    pub fn new(velocity: f64, duration: f64, heading: Bearing) -> Result<Self> {
        if !velocity.is_finite() || !duration.is_finite() {
            return Err(Error::NonFinite("motion command"));
        }
        if duration < 0.0 {
            return Err(Error::NonPositiveInput("duration"));
        }
        Ok(Self {
            velocity,
            duration,
            heading,
        })
    }

    pub fn translation(&self) -> f64 {
        self.velocity * self.duration
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionNoise {
    pub sigma_translation: f64,
}

impl MotionNoise {
    pub fn new(sigma_translation: f64) -> Result<Self> {
        if !sigma_translation.is_finite() {
            return Err(Error::NonFinite("translation noise"));
        }
        if sigma_translation < 0.0 {
            return Err(Error::NonPositiveInput("translation noise"));
        }
        Ok(Self { sigma_translation })
    }
}

/// Draws `count` next poses for a beacon at `pose` executing `cmd`.
///
/// Output depends only on the arguments: samples are generated in fixed
/// chunks, chunk `k` from ChaCha8 stream `k` of `seed`.
pub fn sample_motion(
    pose: Pose2D,
    cmd: &MotionCommand,
    noise: &MotionNoise,
    count: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<Pose2D>> {
    if count == 0 {
        return Err(Error::InvalidCount(0));
    }
    let normal = Normal::new(cmd.translation(), noise.sigma_translation)
        .map_err(|_| Error::NonFinite("translation noise"))?;
    let dir = cmd.heading.unit();
    let chunks = count.div_ceil(CHUNK);

    let parts = exec.map_indexed(chunks, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let len = CHUNK.min(count - k * CHUNK);
        (0..len)
            .map(|_| pose + dir * normal.sample(&mut rng))
            .collect::<Vec<_>>()
    });
    Ok(parts.concat())
}
