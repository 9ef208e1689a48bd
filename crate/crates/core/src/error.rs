use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bad dimension n = {n}: {reason}")]
    BadDimension { n: usize, reason: &'static str },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("curve is not unit speed: |g(T,T) - 1| = {deviation:.3e}")]
    NotUnitSpeed { deviation: f64 },

    #[error("degenerate frame: kappa{index} = {value:.3e} lies in the ambiguous band ({lower:.1e}, {upper:.1e}]")]
    DegenerateFrame {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("missing scalar `{0}` for the claimed osculating order")]
    MissingScalar(&'static str),

    #[error("c = 1 selects the degenerate branch; use the c = 1 classifier")]
    CIsOne,

    #[error("too few samples: need at least {needed}, have {have}")]
    TooFewSamples { needed: usize, have: usize },

    #[error("non-uniform spacing: relative deviation {deviation:.3e} at sample {index}")]
    NonUniformSpacing { index: usize, deviation: f64 },

    #[error("{constraint} violated (residual {residual:.3e})")]
    ConstraintViolated { constraint: String, residual: f64 },

    #[error("inadmissible angle: {0}")]
    InadmissibleAngle(String),

    #[error("norm constraint violated: sum rho_i^2 - (1 - f^2) = {residual:.3e}")]
    NormViolated { residual: f64 },

    #[error("step too large: unit-speed drift {drift:.3e} per unit length exceeds {limit:.1e}")]
    StepTooLarge { drift: f64, limit: f64 },

    #[error("grid too coarse: residual minimum at the grid boundary kappa = {at}")]
    GridTooCoarse { at: f64 },

    #[error("expression not representable as a trigonometric polynomial: {0}")]
    Unrepresentable(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn constraint(name: impl Into<String>, residual: f64) -> Self {
        Error::ConstraintViolated {
            constraint: name.into(),
            residual,
        }
    }
}
