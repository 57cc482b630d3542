use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unsupported model {model}: {reason}")]
    UnsupportedModel { model: String, reason: String },

    #[error("quadrature did not converge: achieved error {achieved:e} > tolerance {requested:e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    #[error("requested {requested} values exceeds memory cap of {cap}")]
    MemoryCap { requested: usize, cap: usize },

    #[error("eigensolver did not converge: residual {residual:e} after {iterations} iterations")]
    EigensolverNonConvergence { residual: f64, iterations: usize },

    #[error("malformed {what}: {reason}")]
    Malformed { what: &'static str, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
