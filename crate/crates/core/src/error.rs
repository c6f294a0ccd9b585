use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A cone expression, angle, point or grid literal could not be parsed.
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid sector width {width} rad: must lie in (0, π]")]
    InvalidSectorWidth { width: f64 },

    #[error("non-finite value `{0}`")]
    NonFinite(f64),

    #[error(
        "invalid operator parameters (lambda={lambda}, mu={mu}, kappa={kappa}): \
         require lambda in (0,2], mu in (0,2], kappa in (0,{kappa_max}]"
    )]
    InvalidParams {
        lambda: f64,
        mu: f64,
        kappa: f64,
        kappa_max: f64,
    },

    #[error("relaxation parameter {0} outside (0,2]")]
    InvalidRelaxation(f64),

    /// Unknown example id, or parameters/start outside the example's region.
    #[error("example {id}: {reason}")]
    ExampleRegion { id: u8, reason: String },

    /// An example's iterates departed from its closed form or became fixed.
    #[error("example {id} failed: {reason}")]
    ExampleMismatch { id: u8, reason: String },

    #[error("malformed trajectory at row {row}: {reason}")]
    Trajectory { row: usize, reason: String },

    /// An identity that must hold by construction was violated.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }

    /// True for failures caused by bad user input rather than by the library.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::InvalidSectorWidth { .. }
                | Error::NonFinite(_)
                | Error::InvalidParams { .. }
                | Error::InvalidRelaxation(_)
                | Error::ExampleRegion { .. }
                | Error::Trajectory { .. }
                | Error::Io(_)
                | Error::Csv(_)
                | Error::Json(_)
        )
    }
}
