use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("value row count mismatch: declared {declared} vertices, found {found} value rows")]
    ValueRowCountMismatch { declared: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("line {line}: vertex row has {found} values, expected {expected}")]
    RowDimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("vertex index {index} out of range (vertex count {count})")]
    VertexOutOfRange { index: usize, count: usize },

    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),

    #[error("simplex of dimension {dim} exceeds the maximum supported dimension {max}")]
    SimplexTooLarge { dim: usize, max: usize },

    #[error("non-finite measuring function value at vertex {vertex}")]
    NonFiniteValue { vertex: usize },

    #[error("non-positive direction component")]
    NonPositiveDirection,

    #[error("zero direction vector")]
    ZeroDirection,

    #[error("parameter point violates u < v in component {component}")]
    NotStrictlyBelow { component: usize },

    #[error("slice parameters must satisfy s < t (got s = {s}, t = {t})")]
    InvalidSlice { s: f64, t: f64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("component index {index} out of range 1..={n}")]
    ComponentOutOfRange { index: usize, n: usize },

    #[error("measuring functions are defined on different complexes ({0} vs {1} vertices)")]
    ComplexMismatch(usize, usize),

    #[error("resolution {resolution} is invalid for {kind}: {reason}")]
    InvalidResolution {
        kind: &'static str,
        resolution: usize,
        reason: String,
    },

    #[error("unknown {what} '{name}'")]
    Unknown { what: &'static str, name: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Whether the error comes from reading or decoding input, as opposed to
    /// a well-formed input that fails validation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Io(_) | Error::Json(_))
    }
}
