use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Every checker returns structured verdicts for
/// mathematical failures; `Error` is reserved for malformed inputs and
/// violated preconditions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("invalid filtration: {0}")]
    BadFiltration(String),
    #[error("invalid fan: {0}")]
    BadFan(String),
    #[error("unknown ray id `{0}`")]
    UnknownRay(String),
    #[error("cone is not smooth: {0}")]
    NotSmooth(String),
    #[error("no integral character lift: {0}")]
    NoLift(String),
    #[error("invalid graded module data: {0}")]
    BadModule(String),
    #[error("adapted basis is not invertible")]
    SingularBasis,
    #[error("invalid representation data: {0}")]
    BadRep(String),
    #[error("generator columns are linearly dependent")]
    DependentColumns,
    #[error("section region is unbounded: {0}")]
    Unbounded(String),
    #[error("invalid problem file: {0}")]
    BadProblem(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
