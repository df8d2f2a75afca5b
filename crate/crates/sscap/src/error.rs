use alloc::string::String;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entry count {len} does not match {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, len: usize },

    #[error("matrix is not Hermitian (max |M - M\u{2020}| entry = {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("not a valid density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("state vector is not normalized (|norm^2 - 1| = {defect:e})")]
    NotNormalized { defect: f64 },

    #[error("unknown subsystem label `{label}`")]
    UnknownLabel { label: String },

    #[error("parameter `{name}` = {value} outside valid range [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("Kraus family violates trace preservation (max deviation {deviation:e})")]
    NotTracePreserving { deviation: f64 },

    #[error("channel has no Kraus operators")]
    EmptyKraus,

    #[error("mixture weights invalid: {reason}")]
    BadWeights { reason: String },

    #[error("no sign change on bracket [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("objective is not unimodal on the scan grid: local maxima at {x1} and {x2} both within 1e-6 of the global maximum")]
    NotUnimodal { x1: f64, x2: f64 },

    #[error("curve kind `{kind}` requires the fixed-q parameter")]
    MissingQ { kind: &'static str },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
