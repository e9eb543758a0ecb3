use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ray misses the reflector")]
    RayMissesReflector,
    #[error("ray is parallel to the mirror line")]
    RayParallel,
    #[error("mirror intersection lies behind the observer")]
    BehindObserver,
    #[error("{0} must be positive")]
    NonPositiveInput(&'static str),
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("degenerate epsilon: reflected edge line is parallel to the observation line")]
    DegenerateEpsilon,
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),
    #[error("step size must be positive")]
    NonPositiveStep,
    #[error("invalid count {0}: at least one required")]
    InvalidCount(usize),
    #[error("beacon lies on the mirror: true and virtual positions coincide")]
    DegenerateBeacon,
    #[error("total range {d_total} is shorter than the observer-to-reflector leg {d1}")]
    RangeTooShort { d_total: f64, d1: f64 },
    #[error("no beacons supplied")]
    NoBeacons,
    #[error("beacons are inconsistent with a single reflector (residual {residual:.3e} > {threshold:.3e})")]
    Inconsistent { residual: f64, threshold: f64 },
}

impl Error {
    /// True for errors caused by degenerate placement or mirror geometry.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::DegenerateEpsilon
                | Error::DegenerateGeometry(_)
                | Error::NonPositiveStep
                | Error::RayParallel
                | Error::DegenerateBeacon
        )
    }
}
