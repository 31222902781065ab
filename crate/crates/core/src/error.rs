use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Group closure produced more elements than allowed; the generators
    /// may generate an infinite group.
    #[error("group closure exceeded the element cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("invalid input at {field}: {message}")]
    Validation { field: String, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("paired generator lists do not define the same group: {0}")]
    GeneratorMismatch(String),

    #[error("subgroup of order {order} is not the isotropy group of its fixed lattice")]
    NotIsotropy { order: usize },

    /// A proved structural fact failed to hold. Always an implementation bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("element is not invariant under generator {generator}")]
    NotInvariant { generator: usize },

    #[error("coefficient of {monomial} is odd; cannot halve")]
    ParityViolation { monomial: String },

    #[error("algebra generator {0} is constant")]
    ConstantGenerator(usize),

    #[error("more than {limit} products fit in the truncation window")]
    TruncationUnbounded { limit: usize },

    #[error("free decomposition fails: {0}")]
    DecompositionFails(Box<crate::orbit::DecompositionFailure>),

    #[error("exponent does not fit in a machine integer")]
    ExponentOverflow,
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
