use std::path::PathBuf;

use thiserror::Error;

use crate::quaternion::Quaternion;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {0} lies outside the circular domain")]
    OutOfDomain(Quaternion),

    #[error("point {0} lies on the real axis")]
    OnRealAxis(Quaternion),

    #[error("zero quaternion has no inverse")]
    ZeroInverse,

    #[error("imaginary units must be distinct")]
    DegeneratePair,

    #[error("slice functions are defined on different domains")]
    DomainMismatch,

    #[error("imaginary units are not orthogonal (g(J, K) = {0:e})")]
    NotOrthogonal(f64),

    #[error("not applicable: {0}")]
    NotApplicable(&'static str),

    #[error("stem function fails the parity check at {at}: residual {residual:e}")]
    Parity { at: String, residual: f64 },

    #[error("spherical expansion needs a non-real center, got {0}")]
    RealCenter(Quaternion),

    #[error("normal function vanishes identically, total multiplicity is undefined")]
    UndefinedMultiplicity,

    #[error("stereographic projection pole at {0}")]
    Pole(Quaternion),

    #[error("operation requires a polynomial stem")]
    NotPolynomial,

    #[error("invalid value for `{field}`: {message}")]
    InvalidField { field: String, message: String },

    #[error("malformed function spec: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidField {
            field: field.into(),
            message: message.into(),
        }
    }
}
