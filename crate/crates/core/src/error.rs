use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{what} has size {size}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { p: u64, order: u128 },

    #[error("group is not {p}-solvable")]
    NotPSolvable { p: u64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("iteration count must be positive")]
    ZeroIterations,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal cross-check failed: {0}")]
    InternalMismatch(String),

    #[error("filtration did not reach the trivial subgroup within {cap} terms")]
    LengthCapExceeded { cap: usize },

    #[error("kernel is not elementary abelian")]
    KernelNotElementaryAbelian,

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
