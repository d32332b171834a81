use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 0")]
    PoleAtZero,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("vectors belong to different root data")]
    DatumMismatch,
    #[error("word is not reduced at position {0}")]
    NotReduced(usize),
    #[error("vertex {0} is not a sink")]
    NotASink(usize),
    #[error("result has a surviving F/K part and does not lie in U_q(n)")]
    NotInUqn,
    #[error("bar matrix is not unitriangular at datum {0}")]
    NotUnitriangular(String),
    #[error("no solution with coefficients in qZ[q] at datum {0}")]
    NoSolution(String),
    #[error("convention check failed: {0}")]
    Convention(String),
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown atom `{atom}` at offset {offset}")]
    UnknownAtom { offset: usize, atom: String },
    #[error("non-integer exponent at offset {0}")]
    NonIntegerExponent(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
