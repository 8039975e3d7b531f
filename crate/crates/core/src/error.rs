use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("undecidable in the implemented ring family: {0}")]
    Undecidable(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("substituted series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("linear coefficient is not a unit")]
    NonUnitLinearCoefficient,
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("ring is not a Q-algebra")]
    NotQAlgebra,

    #[error("ring incompatible with {name}: {reason}")]
    IncompatibleRing { name: String, reason: String },
    #[error("not a logarithm: {0}")]
    BadLogShape(String),
    #[error("not a coordinate change: {0}")]
    BadCoordinate(String),
    #[error("formal group law axioms fail: {0}")]
    NotAFormalGroupLaw(String),

    #[error("functionals belong to different Hopf algebroids")]
    AlgebroidMismatch,
    #[error("not a coaction: {0}")]
    NotACoaction(String),

    #[error("{k} is not invertible in the coefficient ring")]
    NonInvertibleK { k: i64 },
    #[error("index {index} outside window [{lo}, {hi}]")]
    WindowMiss { index: i64, lo: i64, hi: i64 },
    #[error("tower depth {depth} cannot reach index {index}")]
    InsufficientDepth { depth: usize, index: i64 },
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("integrality violated at coefficient {index}")]
    IntegralityViolation { index: usize },
    #[error("omega equation inconsistent at coefficient {index}")]
    Inconsistent { index: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at {line}:{column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("non-integer exponent at {line}:{column}")]
    NonIntegerExponent { line: usize, column: usize },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
