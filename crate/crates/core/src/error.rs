use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// `line` is 1-based; 0 means the input as a whole.
    #[error("parse error{}: {message}", if *line > 0 { format!(" at line {line}") } else { String::new() })]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("{op} of `{x}` and `{y}` does not exist")]
    NotALattice {
        op: &'static str,
        x: String,
        y: String,
    },

    #[error("not an ortholattice: {0}")]
    NotAnOrtholattice(String),

    #[error("invalid Greechie diagram: {0}")]
    InvalidDiagram(String),

    #[error("pasting inconsistency: {0}")]
    Pasting(String),

    #[error("structure has {size} elements, scan limit is {limit} (raise or disable the limit)")]
    SizeLimit { size: usize, limit: usize },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("the zero vector is not a ray")]
    ZeroVector,

    #[error("rays {0} and {1} are parallel")]
    ParallelRays(String, String),

    #[error("closure exceeded the cap of {0} new rays")]
    ClosureCap(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix check failed: {0}")]
    Matrix(String),

    #[error("parameters must be pairwise distinct: {0}")]
    Degenerate(String),

    #[error("probability {0} outside [0, 1] beyond tolerance")]
    ProbabilityOutOfRange(f64),

    #[error("derivation script: {0}")]
    Derivation(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

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

    /// True for malformed input text, as opposed to domain failures.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Json(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
