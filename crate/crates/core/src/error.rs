use thiserror::Error;

use crate::coeff::CoeffError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("exponent overflow (exponents must stay below 2^16)")]
    ExponentOverflow,
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("zero polynomial has no order")]
    ZeroPolynomial,
    #[error("zero element")]
    ZeroElement,
    #[error("operation needs exactly {expected} variables, ring has {got}")]
    WrongVariableCount { expected: usize, got: usize },
    #[error("leading components differ")]
    ComponentMismatch,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("Buchberger normal form requires a global ordering")]
    ModeOrderingMismatch,
    #[error("resource ceiling of {0} reductions exhausted")]
    ResourceExhausted(u64),
    #[error("quotient is infinite dimensional")]
    InfiniteDimensional,
    #[error("singularity is not isolated")]
    NonIsolated,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("form degree overflow")]
    DegreeOverflow,
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown ordering token `{0}`")]
    UnknownOrderingToken(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{name}` at {line}:{column}")]
    UnknownVariable { name: String, line: usize, column: usize },
}

impl Error {
    /// Stable variant name, used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Coeff(CoeffError::DivisionByZero) => "DivisionByZero",
            Error::Coeff(CoeffError::MixedCharacteristic(..)) => "MixedCharacteristic",
            Error::Coeff(CoeffError::NotPrime(_)) => "NotPrime",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::RingMismatch => "RingMismatch",
            Error::ExponentOverflow => "ExponentOverflow",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ZeroElement => "ZeroElement",
            Error::WrongVariableCount { .. } => "WrongVariableCount",
            Error::ComponentMismatch => "ComponentMismatch",
            Error::InvalidOrdering(_) => "InvalidOrdering",
            Error::InvalidRing(_) => "InvalidRing",
            Error::ModeOrderingMismatch => "ModeOrderingMismatch",
            Error::ResourceExhausted(_) => "ResourceExhausted",
            Error::InfiniteDimensional => "InfiniteDimensional",
            Error::NonIsolated => "NonIsolated",
            Error::ParameterOutOfRange(_) => "ParameterOutOfRange",
            Error::DegreeOverflow => "DegreeOverflow",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownOrderingToken(_) => "UnknownOrderingToken",
            Error::DuplicateVariable(_) => "DuplicateVariable",
            Error::UnknownVariable { .. } => "UnknownVariable",
        }
    }
}
