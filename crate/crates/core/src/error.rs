use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },
    #[error("all entries are zero")]
    AllZero,
    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },
    #[error("state is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("state forms differ (vector vs matrix)")]
    FormMismatch,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("expected dimension {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("vector is not strictly ordered and positive")]
    NotStrictlyOrdered,
    #[error("weights must be non-negative with alpha^2 + beta^2 = 1 (got {alpha}, {beta})")]
    InvalidWeights { alpha: f64, beta: f64 },
    #[error("superposition vanishes (squared norm {norm_factor})")]
    VanishingSuperposition { norm_factor: f64 },
    #[error("logarithm base must be finite and > 1 (got {0})")]
    InvalidBase(f64),
    #[error("invalid Renyi order {0}")]
    InvalidOrder(f64),
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("row document line {line}: {message}")]
    RowSyntax { line: usize, message: String },
}
