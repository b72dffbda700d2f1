use thiserror::Error;

/// Errors reported by any layer of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported 16-bit range")]
    ModulusRange(u64),
    #[error("modulus {0} too large for byte-entry storage (requires p < 256)")]
    ByteStorage(u64),
    #[error("no inverse of zero")]
    ZeroInverse,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("prime {0} outside the supported range 2..=101")]
    PrimeRange(u64),
    #[error("join requires two distinct points")]
    EqualPoints,
    #[error("meet requires two distinct lines")]
    EqualLines,
    #[error("{what} index {index} out of range")]
    IndexRange { what: &'static str, index: u64 },
    #[error("vector length {got} does not match plane size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("computed dimension {computed} differs from (p+1 choose 2)+1 = {expected}")]
    DimensionInvariant { computed: usize, expected: usize },
    #[error("invalid Moorhouse spec: {0}")]
    InvalidMoorhouseSpec(String),
    #[error("candidate basis has rank {rank}, expected {expected}")]
    NotABasis { rank: usize, expected: usize },
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("construction requires odd p")]
    RequiresOddPrime,
    #[error("enumeration needs {needed} words, budget is {budget}; enumerate the dual code or use the certified low-weight search")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("inconsistent weight enumerator: {0}")]
    InconsistentEnumerator(String),
    #[error("witness weight mismatch: expected {expected}, got {got}")]
    WitnessWeight { expected: usize, got: usize },
    #[error("witness is not a codeword")]
    WitnessNotCodeword,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown lemma id {0:?}; valid ids: 2.1, 2.4, 2.5-equiv, 2.6, 2.7, 3.4-census, profile-identities")]
    UnknownLemma(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
