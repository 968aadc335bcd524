use thiserror::Error;

/// Errors produced by table construction, parameter mapping, and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// A table entry or derived probability left `[0, 1]`. `name` identifies
    /// the first offending entry in `p1..p16` order.
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: String, value: f64 },

    /// An embedding parameter was negative.
    #[error("parameter {name} = {value} must be non-negative")]
    NegativeParameter { name: &'static str, value: f64 },

    /// A scalar argument left its documented range.
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// A value that must be finite was NaN or infinite.
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: String, value: f64 },

    /// A denominator required by a closed-form expression vanished.
    #[error("degenerate denominator: {0}")]
    Degenerate(String),

    /// An operation that only applies to certain game classes was invoked on
    /// a matrix of another class.
    #[error("expected a {expected} matrix, classified as {found}")]
    WrongGameClass {
        expected: &'static str,
        found: String,
    },

    /// A structural constraint (normalization, symmetry, causality) failed
    /// beyond the given tolerance.
    #[error("constraint violated: {what} (residual {residual:.3e} exceeds tolerance {tol:.3e})")]
    ConstraintViolation {
        what: &'static str,
        residual: f64,
        tol: f64,
    },

    /// A closed-form precondition (such as a lower bound on a marginal) does
    /// not hold for the supplied inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed input file or parameter string.
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
