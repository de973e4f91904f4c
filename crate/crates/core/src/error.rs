use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree {d} out of range 0..={max}")]
    DegreeOutOfRange { d: usize, max: usize },

    #[error("basis does not match degree {d}: {reason}")]
    BasisMismatch { d: usize, reason: String },

    #[error("polynomial is not homogeneous (found degrees {first} and {second})")]
    NotHomogeneous { first: u32, second: u32 },

    #[error("the zero polynomial is not a valid form")]
    ZeroPolynomial,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("undeclared variable `{name}` at position {pos}")]
    UndeclaredVariable { name: String, pos: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}
