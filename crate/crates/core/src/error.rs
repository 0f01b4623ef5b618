use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not a symmetric unitary (asymmetry {asymmetry:.3e}, unitarity {deviation:.3e})")]
    NotSymmetricUnitary { asymmetry: f64, deviation: f64 },

    #[error("operator is not a tensor product of one-qubit gates (residual {residual:.3e})")]
    NotLocal { residual: f64 },

    #[error("operators are not in the same double coset (spectral mismatch {mismatch:.3e})")]
    CosetMismatch { mismatch: f64 },

    #[error("synthesized circuit failed verification (best residual {residual:.3e}, tolerance {tolerance:.1e})")]
    VerificationFailed { residual: f64, tolerance: f64 },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("rule {rule} does not match at position {pos}")]
    NoMatch { rule: String, pos: usize },

    #[error("gate {gate} at position {pos} is outside the CNOT/Rx/Rz set")]
    UnsupportedGate { gate: String, pos: usize },

    #[error("rewrite rule {0} failed its soundness check")]
    UnsoundRule(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("arithmetic overflow for n = {0}")]
    Overflow(u32),

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
