use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),

    #[error("ring context mismatch")]
    ContextMismatch,

    #[error("exponent overflow: {0}")]
    Overflow(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("relation `{0}` is not homogeneous under the declared weights")]
    InhomogeneousRelation(String),

    #[error("graded invariant violated: {0}")]
    GradedInvariant(String),

    #[error("frobenius root requires a polynomial ring (context has relations)")]
    RelationsPresent,

    #[error("closure chain descended at e = {0}")]
    ChainDescent(u32),

    #[error("test element must be nonzero")]
    ZeroTestElement,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("DCC verdict is indeterminate for this support")]
    IndeterminateDcc,

    #[error("degree precondition violated: {0}")]
    DegreePrecondition(String),

    #[error("arity or characteristic mismatch")]
    ArityMismatch,

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse_at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let upto = &src[..offset.min(src.len())];
        let line = upto.matches('\n').count() + 1;
        let column = upto.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
