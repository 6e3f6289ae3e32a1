use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("invalid grid: N = {n}, S = {s} (need N a power of two >= 8 and S >= 2)")]
    InvalidGrid { n: usize, s: f64 },
    #[error("field has {got} samples, grid needs {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("bad magic in field file")]
    BadMagic,
    #[error("field file truncated or malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
