use thiserror::Error;

/// Errors raised by the exact algebra layer and everything built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("unsupported conductor {0} (must be between 1 and {max})", max = crate::algebra::MAX_CONDUCTOR)]
    UnsupportedConductor(u32),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("too many variables: {0} (at most {max} supported)", max = crate::algebra::MAX_VARS)]
    TooManyVariables(usize),

    #[error("not a nonzero homogeneous linear form")]
    NotLinearForm,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("zero normal vector")]
    ZeroNormal,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("group not closed within budget of {0} elements")]
    GroupBudget(usize),

    #[error("singular generator matrix")]
    SingularGenerator,

    #[error("unknown group name `{0}`")]
    UnknownGroup(String),

    #[error("invalid group parameters: {0}")]
    GroupParameters(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("modular reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("arrangement is not simple")]
    NotSimple,

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
