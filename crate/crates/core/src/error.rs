use thiserror::Error;

use crate::exact::Gq;
use crate::lie::AlgebraKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("algebra kind mismatch: {0:?} vs {1:?}")]
    KindMismatch(AlgebraKind, AlgebraKind),

    #[error("index 0 not in K basis")]
    ZeroKIndex,

    #[error("{0:?} admits no central element")]
    CentralNotAllowed(AlgebraKind),

    #[error("not in K0: coefficient sum is {0}")]
    NotInK0(Box<Gq>),

    #[error("generator index {index} outside window {bound}")]
    OutsideWindow { index: i64, bound: u32 },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("nonzero lambda {0}; reduce to lambda = 0 first (shift K_n by -n*lambda)")]
    NonzeroLambda(Box<Gq>),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
