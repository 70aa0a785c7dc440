use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("weight rule violated by row `{row}`: {message}")]
    WeightRule { row: String, message: String },

    /// A mode was requested outside the stored window and grading does not
    /// force it to vanish.
    #[error("incomplete data: {0}")]
    IncompleteData(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("binomial expansion needs two distinct variables, got {0} twice")]
    SameVariable(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("series is not rational with linear-factor exponent <= {0}")]
    NotRational(u32),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A series reaches exponents whose coefficients depend on data above
    /// the top weight of a truncated structure.
    #[error("series reaches the truncation: {0}")]
    Truncated(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("bilinear form rejected: {0}")]
    DegenerateForm(String),

    #[error("weight cutoff {0} exceeded while reordering")]
    CutoffExceeded(i64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
