use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ambient (k={k}, n={n}): need 2 <= k <= n-2")]
    BadAmbient { k: usize, n: usize },
    #[error("invalid subset: {0}")]
    BadSubset(String),
    #[error("subset {0} is frozen")]
    Frozen(String),
    #[error("resource cap exceeded: {what} (cap {cap})")]
    CapExceeded { what: String, cap: usize },
    #[error("vector is not in H: row {row} sums to {sum}")]
    NotInH { row: usize, sum: String },
    #[error("non-exact division: {0}")]
    NonExact(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("inadmissible input: {0}")]
    Inadmissible(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
