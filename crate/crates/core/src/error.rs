use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("speed {speed} is not below the light speed {c}")]
    Superluminal { speed: f64, c: f64 },

    #[error("operation requires boost kind {expected}, got {actual}")]
    WrongBoostKind {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("plane wave has no rest-energy term")]
    MissingRestEnergy,

    #[error("finite-difference step too large along {axis}: phase change {phase_change:.3} rad exceeds pi/2")]
    StepTooLarge {
        axis: &'static str,
        phase_change: f64,
    },

    #[error("field magnitude vanishes near the probe point")]
    VanishingField,

    #[error("frame matrix is singular")]
    SingularMatrix,

    #[error("check is inconclusive: {0}")]
    Inconclusive(String),

    #[error("order scan needs at least {need} samples, got {got}")]
    TooFewSamples { got: usize, need: usize },

    #[error("time {t} lies outside the trajectory domain [{start}, {end}]")]
    OutsideDomain { t: f64, start: f64, end: f64 },

    #[error("integrand is not finite at t = {0}")]
    NonIntegrable(f64),

    #[error("quadrature exceeded {0} integrand evaluations")]
    EvaluationCap(usize),

    #[error("cannot parse trajectory spec: {0}")]
    TrajectoryParse(String),
}
