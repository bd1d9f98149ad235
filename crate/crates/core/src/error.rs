use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("field order {p}^{n} exceeds the supported bound {bound}")]
    FieldTooLarge { p: u32, n: u32, bound: u64 },

    #[error("modulus is not a monic irreducible polynomial of degree {degree} over GF({p})")]
    ReducibleModulus { p: u32, degree: u32 },

    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),

    #[error("operation requires characteristic 2, field has characteristic {0}")]
    NotCharacteristicTwo(u32),

    #[error("degenerate quadratic: leading coefficient is zero")]
    DegenerateQuadratic,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("quasigroup of order {quasigroup} does not match {expected} blocks per parallel class")]
    QuasigroupOrderMismatch { quasigroup: usize, expected: usize },

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("inconsistent functional form: {0}")]
    InconsistentForm(String),

    #[error("empty preimage for block index {block} and color {color}")]
    EmptyPreimage { block: usize, color: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("intercept is not in U_c for this slope")]
    InterceptNotInRange,

    #[error(transparent)]
    Violation(#[from] crate::designs::Violation),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
