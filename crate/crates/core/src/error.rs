use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("coefficient index {index} exceeds truncation order {order}")]
    OutOfRange { index: usize, order: usize },

    #[error("constant term is not a unit in the coefficient ring")]
    NonUnit,

    #[error("bound exceeded: {what} = {value} (limit {limit})")]
    Bounds {
        what: &'static str,
        value: i128,
        limit: i128,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("transversality fails at point {point} (cone #{cone}): direction {witness} lies in the normal directions")]
    Transversality {
        point: String,
        cone: usize,
        witness: String,
    },

    #[error("zero-section crossing at point {point}: {witness} lies in S and in -S'")]
    ZeroSectionCrossing { point: String, witness: String },

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn bounds(what: &'static str, value: impl Into<i128>, limit: impl Into<i128>) -> Error {
    Error::Bounds {
        what,
        value: value.into(),
        limit: limit.into(),
    }
}
