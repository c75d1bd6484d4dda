use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("modulus is not irreducible over GF({p})")]
    NotIrreducible { p: u32 },
    #[error("element encoding {enc} out of range for a field of order {q}")]
    ElementOutOfRange { enc: u64, q: u32 },
    #[error("row index {index} out of range for {rows} rows")]
    IndexOutOfRange { index: usize, rows: usize },
    #[error("row index {0} listed twice")]
    DuplicateIndex(usize),
    #[error("matrix does not have full row rank (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },
    #[error("defining matrix is not non-singular by columns")]
    NotNsc,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("minimum distance is undefined for the zero code")]
    UndefinedDistance,
    #[error("enumeration cap exceeded: {needed} words needed, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("Galois level {ell} out of range for extension degree {e}")]
    EllOutOfRange { ell: u32, e: u32 },
    #[error("constituent {index} has length {found}, expected {expected}")]
    ConstituentLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed element token {0:?}")]
    BadToken(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
