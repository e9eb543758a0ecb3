//! Scenario configuration files.
//!
//! TOML with one table per entity. Angles are degrees and lengths are
//! centimetres in the file; everything is radians once converted into a
//! [`Scenario`].

use std::path::Path;

use mirrorloc::geometry::{Pose2D, ReflectorState};
use mirrorloc::ranging::SizeConstancy;
use mirrorloc::simulate::{NoiseModel, Scenario};
use mirrorloc::solver::SolveOptions;
use mirrorloc::Error;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const DEFAULT_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<Point> for Pose2D {
    fn from(p: Point) -> Self {
        Pose2D::new(p.x, p.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReflectorConfig {
    pub x: f64,
    pub y: f64,
    pub orientation_deg: f64,
    pub size: f64,
}

/// Apparent size of an object at a known distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reference {
    pub size: f64,
    pub distance: f64,
}

impl Reference {
    pub fn constancy(&self) -> Result<SizeConstancy> {
        SizeConstancy::from_reference(self.size, self.distance)
            .map_err(|e| CliError::config(format!("ranging reference: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangingConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Reference>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beacon: Option<Reference>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementConfig {
    pub epsilon_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default = "default_ratio")]
    pub max_residual_ratio: f64,
}

fn default_ratio() -> f64 {
    SolveOptions::default().max_residual_ratio
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_residual_ratio: default_ratio(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseRow {
    pub sigma_bearing_deg: f64,
    pub sigma_range: f64,
}

impl NoiseRow {
    pub fn model(&self) -> Result<NoiseModel> {
        NoiseModel::from_degrees(self.sigma_bearing_deg, self.sigma_range)
            .map_err(|e| CliError::config(format!("noise row: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub noise: Vec<NoiseRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Experiment id used in result tables.
    #[serde(default = "default_name")]
    pub name: String,
    pub observer: Point,
    pub reflector: ReflectorConfig,
    pub target: Point,
    pub placement: PlacementConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub ranging: RangingConfig,
    #[serde(default)]
    pub simulate: SimulateConfig,
    #[serde(default)]
    pub beacons: Vec<Point>,
}

fn default_name() -> String {
    "scenario".into()
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn validate(&self) -> Result<()> {
        let mut numbers = vec![
            ("observer.x", self.observer.x),
            ("observer.y", self.observer.y),
            ("reflector.x", self.reflector.x),
            ("reflector.y", self.reflector.y),
            ("reflector.orientation_deg", self.reflector.orientation_deg),
            ("reflector.size", self.reflector.size),
            ("target.x", self.target.x),
            ("target.y", self.target.y),
            ("placement.epsilon_deg", self.placement.epsilon_deg),
            ("solver.max_residual_ratio", self.solver.max_residual_ratio),
        ];
        for b in &self.beacons {
            numbers.push(("beacons.x", b.x));
            numbers.push(("beacons.y", b.y));
        }
        for n in &self.simulate.noise {
            numbers.push(("simulate.noise.sigma_bearing_deg", n.sigma_bearing_deg));
            numbers.push(("simulate.noise.sigma_range", n.sigma_range));
        }
        if let Some((key, _)) = numbers.iter().find(|(_, v)| !v.is_finite()) {
            return Err(CliError::config(format!("{key} must be finite")));
        }
        if self.reflector.size <= 0.0 {
            return Err(CliError::config("reflector.size must be positive"));
        }
        if self.placement.epsilon_deg < 0.0 {
            return Err(CliError::config("placement.epsilon_deg must not be negative"));
        }
        if self.solver.max_residual_ratio <= 0.0 {
            return Err(CliError::config("solver.max_residual_ratio must be positive"));
        }
        if self.simulate.iterations == Some(0) {
            return Err(CliError::config("simulate.iterations must be at least 1"));
        }
        for n in &self.simulate.noise {
            n.model()?;
        }
        for r in [self.ranging.target, self.ranging.beacon].into_iter().flatten() {
            r.constancy()?;
        }
        Ok(())
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            reflector_size: self.reflector.size,
            max_residual_ratio: self.solver.max_residual_ratio,
        }
    }

    /// Ground-truth scene. Fails when the target or a beacon cannot be seen
    /// through the reflector.
    pub fn scenario(&self) -> Result<Scenario> {
        let reflector = ReflectorState::new(
            self.reflector.into_center(),
            self.reflector.orientation_deg.to_radians(),
            self.reflector.size,
        )?;
        let scene = Scenario {
            observer: self.observer.into(),
            reflector,
            target: self.target.into(),
            beacons: self.beacons.iter().map(|&b| b.into()).collect(),
            epsilon: self.placement.epsilon_deg.to_radians(),
        };
        let invisible = |what: String| move |e: Error| match e {
            Error::RayMissesReflector => CliError::config(format!("{what} is not visible through the reflector")),
            other => other.into(),
        };
        scene.target_observation().map_err(invisible("target".into()))?;
        for (i, &b) in scene.beacons.iter().enumerate() {
            mirrorloc::simulate::synthesize_observation(&scene, b).map_err(invisible(format!("beacon {}", i + 1)))?;
        }
        Ok(scene)
    }
}

impl ReflectorConfig {
    fn into_center(self) -> Pose2D {
        Pose2D::new(self.x, self.y)
    }
}
