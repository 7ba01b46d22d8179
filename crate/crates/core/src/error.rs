use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid interval ({a}, {b}): endpoints must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("breakpoints must be strictly increasing and inside ({a}, {b})")]
    InvalidBreakpoints { a: f64, b: f64 },

    #[error("expected {expected} values for {breaks} breakpoints, got {got}")]
    LengthMismatch {
        breaks: usize,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value {0} in step function")]
    NonFiniteValue(f64),

    #[error("functions live on different intervals")]
    IntervalMismatch,

    #[error("invalid sequence parameters: {0}")]
    InvalidSequence(String),

    #[error("({x}, {y}) is outside the domain of {name}")]
    OutOfDomain { name: String, x: f64, y: f64 },

    #[error("jump {0} is not in the grid alphabet")]
    NotInAlphabet(f64),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid grid table: {0}")]
    InvalidTable(String),

    #[error("unknown supremand `{0}`")]
    UnknownSupremand(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expression error: {0}")]
    Expression(String),

    #[error("evaluation produced NaN at ({x}, {y})")]
    NotANumber { x: f64, y: f64 },

    #[error("empty grid")]
    EmptyGrid,

    #[error("no admissible tuple could be formed: {0}")]
    NoAdmissibleTuple(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}
