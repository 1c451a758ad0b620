use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index ({row}, {col}) out of range for order {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },

    #[error("matrix order must be at least 1")]
    EmptyMatrix,

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid glasses parameters p={p}, k={k}, q={q}")]
    InvalidGlasses { p: usize, k: usize, q: usize },

    #[error("arc ({0}, {1}) out of range or duplicated")]
    InvalidArc(usize, usize),

    #[error("order {n} exceeds the supported maximum {max} for {what}")]
    OrderTooLarge { n: usize, max: usize, what: &'static str },

    #[error("order {n} is below the supported minimum {min} for {what}")]
    OrderTooSmall { n: usize, min: usize, what: &'static str },

    #[error("cycle detection inconclusive after {stored} stored powers")]
    Inconclusive { stored: usize },

    #[error("fewer than two walks of length {len} from {from} to {to}")]
    FewerThanTwoWalks { from: usize, to: usize, len: usize },

    #[error("stable index is infinite")]
    InfiniteStableIndex,

    #[error("{m} and {n} are not coprime")]
    NotCoprime { m: usize, n: usize },

    #[error("invalid cap {0}; must be at least 1")]
    InvalidCap(usize),

    #[error("invalid shard {index} of {count}")]
    InvalidShard { index: u64, count: u64 },

    #[error("inconsistent reports: {0}")]
    InconsistentReports(String),

    #[error("extremality inconsistent with the census: {0}")]
    CensusMismatch(String),

    #[error("n = 6 search needs an explicit opt-in")]
    LongRunNotAllowed,

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

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
