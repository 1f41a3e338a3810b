use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("division by an interval containing zero: [{lo}, {hi}]")]
    DivisionByZero { lo: f64, hi: f64 },

    #[error("{op}: argument [{lo}, {hi}] outside the domain")]
    Domain { op: &'static str, lo: f64, hi: f64 },

    #[error("argument reduction lost all precision for |x| = {magnitude}")]
    PrecisionLoss { magnitude: f64 },

    #[error("enclosure width {width} exceeds the configured cap {cap}")]
    EnclosureTooWide { width: f64, cap: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("floor/ceiling of [{lo}, {hi}] is ambiguous; split or perturb the input")]
    AmbiguousInteger { lo: f64, hi: f64 },

    #[error("Euler-Maclaurin tail condition fails: N = {n} at t = {t}")]
    TailCondition { n: u64, t: f64 },

    #[error("empty sum: shift m = {m} is not below length L = {l}")]
    EmptySum { m: u64, l: u64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
