use thiserror::Error;

use crate::fuzzy::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("scalars from different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("inner subspace is not contained in the outer subspace")]
    NotNested,

    #[error("levels must be strictly decreasing (entry {index})")]
    LevelsNotDecreasing { index: usize },

    #[error("subspace chain must be strictly increasing (entry {index})")]
    ChainNotStrict { index: usize },

    #[error("last subspace of the chain must be the whole ambient space")]
    TopNotAmbient,

    #[error("level {level} is outside [0, 1]")]
    LevelOutOfRange { level: String },

    #[error("fuzzy subspace axiom violated: {0}")]
    AxiomViolation(Violation),

    #[error("level set at {level} is not a subspace")]
    LevelSetNotSubspace { level: String },

    #[error("linear map is not invertible")]
    NotInvertible,

    #[error("fuzzy subspaces are not isomorphic")]
    NotIsomorphic,

    #[error("enumeration budget exceeded: {what} needs {needed}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: u64,
    },

    #[error("operation requires a prime field")]
    RequiresPrimeField,

    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    #[error("unknown isomorphism method `{0}`")]
    UnknownMethod(String),
}

impl Error {
    pub(crate) fn field_mismatch(left: impl ToString, right: impl ToString) -> Self {
        Error::FieldMismatch {
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    pub(crate) fn dims(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }

    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }

    /// Strips line-provenance wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLine { source, .. } => source.root(),
            other => other,
        }
    }
}
