use thiserror::Error;

/// Errors raised by the library. Every variant maps onto one of the CLI exit
/// codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("containment violation: {0}")]
    ContainmentViolation(String),

    #[error("semigroup is not positive: {0}")]
    NotPositive(String),

    #[error("a search bound is required for a non-positive semigroup")]
    MissingBound,

    #[error("membership undecided within coefficient-sum bound {0}")]
    Undecided(u64),

    #[error("not a numerical semigroup: {0}")]
    NotNumerical(String),

    #[error("scale factor must be positive")]
    ZeroScale,

    #[error("image of generator {generator:?} is not integral")]
    NonIntegralImage { generator: Vec<i64> },

    #[error("homomorphism {which}: image of generator {generator:?} is not in the target")]
    HomImageNotInTarget { which: String, generator: Vec<i64> },

    #[error("elements belong to different fibered-sum contexts")]
    ContextMismatch,

    #[error("embeddings disagree on generator {0:?} of the base")]
    EmbeddingDisagreement(Vec<i64>),

    #[error("matrix is not invertible")]
    NonInvertible,

    #[error("coefficient rings do not match: {0}")]
    CoefficientRingMismatch(String),

    #[error("flatness precondition failed: {0}")]
    NotFlat(String),

    #[error("gcd condition violated: {0}")]
    GcdViolation(String),

    #[error("element {0:?} is not in the semigroup")]
    NotAMember(Vec<i64>),

    #[error("enumeration did not stabilize: {0}")]
    NotStabilized(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("computation cancelled")]
    Cancelled,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IMPOSSIBLE: i32 = 2;
pub const EXIT_BOUND_EXHAUSTED: i32 = 3;
pub const EXIT_PARSE: i32 = 64;
pub const EXIT_PRECONDITION: i32 = 65;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => EXIT_PARSE,
            Error::Undecided(_) | Error::NotStabilized(_) => EXIT_BOUND_EXHAUSTED,
            _ => EXIT_PRECONDITION,
        }
    }
}
