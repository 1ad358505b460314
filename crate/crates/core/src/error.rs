use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomials in different variables")]
    MixedVariables,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("mismatched quiver size: {0} vs {1}")]
    MismatchedQuiver(usize, usize),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("degenerate fiber: t0 = 0 lies on the zero section")]
    DegenerateFiber,
    #[error("{root} is not an m-th root of t0 = {t0} (m = {m})")]
    NotARoot { root: String, t0: String, m: usize },
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("loop relation fails at vertex {0}")]
    LoopRelation(usize),
    #[error("map is not t-equivariant")]
    NotEquivariant,
    #[error("map has zero determinant")]
    SingularMap,
    #[error("element is a zero divisor")]
    ZeroDivisor,
    #[error("divisor relation fails: the divisors do not sum to div(t)")]
    DivisorRelation,
    #[error("unsupported regime: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
