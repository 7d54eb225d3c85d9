use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate fading: amplitude variance is zero")]
    DegenerateFading,

    #[error("conventional RIS split needs an even element count, got {0}")]
    OddElementCount(usize),

    #[error("empty sample set")]
    EmptySamples,

    #[error("hypergeometric pole: c = {0} is a non-positive integer")]
    Pole(f64),

    #[error("{what} did not converge (best estimate {estimate:e})")]
    NonConvergence { what: &'static str, estimate: f64 },

    #[error("incomplete Bell polynomial index out of range: m = {m}, l = {l}, {len} arguments")]
    BellIndex { m: usize, l: usize, len: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for numerical failures, as opposed to bad inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Pole(_))
    }
}
