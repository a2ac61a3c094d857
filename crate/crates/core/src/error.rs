use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("invariant `{invariant}` is not available over {field}")]
    UnsupportedInvariant { invariant: &'static str, field: String },
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("zero has no square class")]
    ZeroClass,
    #[error("element is not specializable: {0}")]
    NonSpecializable(String),
    #[error("invalid field extension: {0}")]
    InvalidExtension(String),
    #[error("degenerate bilinear form (rank {rank} < {size})")]
    DegenerateForm { rank: usize, size: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("singularity is not isolated: the Jacobian quotient is infinite-dimensional")]
    NotIsolated,
    #[error("inadmissible weights: {0}")]
    InadmissibleWeights(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no nonzero morphism {from} -> {to}")]
    ForbiddenHom { from: String, to: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("batch entry {index}: {source}")]
    BatchEntry { index: usize, source: Box<Error> },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable identifier used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ContextMismatch(..) => "context-mismatch",
            Error::UnsupportedInvariant { .. } => "unsupported-invariant",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidPrime(_) => "invalid-prime",
            Error::ZeroClass => "zero-class",
            Error::NonSpecializable(_) => "non-specializable",
            Error::InvalidExtension(_) => "invalid-extension",
            Error::DegenerateForm { .. } => "degenerate-form",
            Error::NotSymmetric => "not-symmetric",
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown-variable",
            Error::InvalidIdeal(_) => "invalid-ideal",
            Error::NotIsolated => "not-isolated",
            Error::InadmissibleWeights(_) => "inadmissible-weights",
            Error::InvalidInput(_) => "invalid-input",
            Error::ForbiddenHom { .. } => "forbidden-hom",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::BatchEntry { source, .. } => source.kind(),
            Error::Internal(_) => "internal",
        }
    }

    /// True for errors caused by malformed user input rather than by the
    /// mathematics of a well-formed request.
    pub fn is_usage(&self) -> bool {
        if let Error::BatchEntry { source, .. } = self {
            return source.is_usage();
        }
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::InvalidPrime(_)
                | Error::InvalidInput(_)
                | Error::ContextMismatch(..)
        )
    }
}
