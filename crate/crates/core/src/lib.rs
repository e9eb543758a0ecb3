//! Localization of a planar reflector and a hidden target seen only through
//! a one-bounce reflection.
//!
//! A single fixed observer measures the bearing of the reflected target and
//! estimates its total path length from apparent size. Beacons at known
//! positions, observed through the same reflector, pin down the reflector
//! line; the target is then the mirror image of its virtual point.
//!
//! Modules:
//!
//! - [`geometry`]: 2-D points, bearings, mirror lines and reflection math.
//! - [`ranging`]: size-constancy range estimation.
//! - [`placement`]: beacon placement regions along the observation ray.
//! - [`paths`]: moving-beacon paths and their lengths.
//! - [`motion`]: velocity motion model sampling for a moving beacon.
//! - [`solver`]: closed-form and least-squares reflector recovery, plus a
//!   brute-force grid oracle.
//! - [`simulate`]: noise injection and Monte Carlo RMSE studies.
//!
//! Inner loops that are embarrassingly parallel (Monte Carlo iterations,
//! grid-oracle cells, motion samples) run on rayon when the `parallel`
//! feature is enabled and fall back to plain iterators otherwise. Results are
//! identical either way.

pub mod error;
pub mod exec;
pub mod geometry;
pub mod motion;
pub mod paths;
pub mod placement;
pub mod ranging;
pub mod simulate;
pub mod solver;

pub use error::{Error, Result};
pub use exec::Execution;
pub use geometry::{Bearing, MirrorLine, Pose2D, Ray, ReflectorState};
pub use ranging::{Observation, SizeConstancy};
