use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank {0} is not a valid Clifford rank")]
    InvalidRank(usize),
    #[error("signature mismatch: rank {left} vs rank {right}")]
    SignatureMismatch { left: usize, right: usize },
    #[error("rank {rank} exceeds the supported maximum {max} (set CLIFFLAB_MAX_RANK to raise it)")]
    UnsupportedRank { rank: usize, max: usize },
    #[error("invalid multiplicities ({m_plus}, {m_minus}) for rank {rank}: {reason}")]
    InvalidMultiplicities { rank: usize, m_plus: usize, m_minus: usize, reason: &'static str },
    #[error("odd element cannot be evaluated in a representation of the even algebra")]
    ParityMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("volume endomorphism is not an involution")]
    NotInvolution,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("generators do not span a Lie subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("calibration violates the Bianchi identity (residual {residual})")]
    Calibration { residual: String },
    #[error("extension rejected at u = e{u}, v = {v}, w = {w}")]
    Rejected { u: usize, v: String, w: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
