use thiserror::Error;

/// Errors raised by construction and verification routines.
///
/// Variants carrying a `trace` hold a rendered snapshot of the reverse
/// tableau (and the steps that produced it) at the point of failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero polynomial has no lowest coefficient")]
    ZeroPolynomial,

    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix of size {0} is too large for subset memoisation")]
    TooLarge(usize),

    #[error("degenerate minor for pair {pair}")]
    DegenerateMinor { pair: String },

    #[error("index sets of unequal size for pseudo pair {pair}: rows {rows:?}, cols {cols:?}")]
    UnbalancedMinor {
        pair: String,
        rows: Vec<usize>,
        cols: Vec<usize>,
    },

    #[error("{pair} is not a neighbouring pair of this composition")]
    UnknownPair { pair: String },

    #[error("pair {pair} has already been implemented")]
    AlreadyImplemented { pair: String },

    #[error("enabling check failed for pair {pair}: {detail}\n{trace}")]
    Enabling {
        pair: String,
        detail: String,
        trace: String,
    },

    #[error("pair {pair} not implementable: no eligible column besides the leftmost\n{trace}")]
    NotImplementable { pair: String, trace: String },

    #[error("illegal implementation choice for pair {pair}: {detail}")]
    IllegalChoice { pair: String, detail: String },

    #[error("structure violated after implementing {pair}: {detail}\n{trace}")]
    Structure {
        pair: String,
        detail: String,
        trace: String,
    },

    #[error("factorization undefined on annihilated pair {pair}")]
    NotFree { pair: String },

    #[error("illegal subcolumn move: {0}")]
    IllegalMove(String),

    #[error("enumeration guard exceeded: estimated {estimated} traces, limit {limit}")]
    LimitExceeded { estimated: u128, limit: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
