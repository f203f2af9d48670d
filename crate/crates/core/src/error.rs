use thiserror::Error;

/// Errors raised by the arithmetic, the category layer and the parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("generator {0} has no image")]
    UnboundGenerator(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("degenerate derived signature: zero and one coincide ({0})")]
    DegenerateSignature(String),

    #[error("derived action kernel must have augmentation 1, got {0}")]
    InvalidActionKernel(String),

    #[error("no inner data for object {0}")]
    MissingInnerData(String),

    #[error("map is not invertible: {0}")]
    NotInvertible(String),

    #[error("constraint set has no solution: {constraint} does not vanish")]
    NoSolution { constraint: String },

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("wrong variety: {0}")]
    WrongVariety(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
