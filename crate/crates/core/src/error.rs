use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field of order {p}^{m} exceeds the supported size 2^16")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("value {value} is not an element of a field of order {order}")]
    InvalidElement { value: u32, order: u32 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("coefficient degree {t} is not supported for extension degree {m} (use 1 or {m})")]
    InvalidCoeffDegree { t: u32, m: u32 },
    #[error("hermitian form requires a square extension field, got order {p}^{m}")]
    NotSquareField { p: u32, m: u32 },
    #[error("the zero code is not allowed here")]
    ZeroCode,
    #[error("enumeration of {p}^{log_size} elements exceeds the threshold {threshold}")]
    ThresholdExceeded { p: u32, log_size: usize, threshold: u64 },
    #[error("set difference is empty: both codes are equal")]
    EmptyDifference,
    #[error("code is not a subcode of the enclosing code")]
    NotSubcode,
    #[error("invalid symplectic decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("an ((n,1,R,d)) subsystem code must be pure, but swt(C) = {swt_c} < d = {d}")]
    ImpureTrivialSubsystem { swt_c: usize, d: usize },
    #[error("purity required: {0}")]
    PurityRequired(String),
    #[error("purity cannot be decided: {0}")]
    PurityUnknown(String),
    #[error("code is not F_q-linear")]
    NotLinear,
    #[error("code is not Hermitian self-orthogonal")]
    NotSelfOrthogonal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("non-integral parameter: {0}")]
    NonIntegral(String),
    #[error("claim violated: {0}")]
    ClaimViolated(String),
    #[error("construction failure: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
