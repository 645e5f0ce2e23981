use thiserror::Error;

/// Errors raised while building spaces or evaluating the inf-sup constant.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polynomial degree {0}, must be at least 1")]
    InvalidDegree(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point {0} lies outside the reference interval [-1, 1]")]
    Domain(f64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e} below cutoff -{cutoff:e}")]
    NotPsd { eigenvalue: f64, cutoff: f64 },

    #[error("no singular value above the cutoff {cutoff:e}")]
    NoPositiveSingularValue { cutoff: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
