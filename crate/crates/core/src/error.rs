use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    InvalidAlphabet(u32),
    #[error("symbol {symbol} out of range for alphabet size {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },
    #[error("shape mismatch: (n={n1}, q={q1}) vs (n={n2}, q={q2})")]
    ShapeMismatch {
        n1: usize,
        q1: u32,
        n2: usize,
        q2: u32,
    },
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(u32, u32),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("coordinate {coordinate} out of range for n={n}")]
    CoordinateOutOfRange { coordinate: usize, n: usize },
    #[error("eigenspace index {index} out of range for n={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid eigenspace range [{lo},{hi}]")]
    InvalidRange { lo: usize, hi: usize },
    #[error("regime violation: {0}")]
    Regime(String),
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance too large: q^n = {size} exceeds {limit}")]
    Infeasible { size: u128, limit: u128 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("HGF line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
