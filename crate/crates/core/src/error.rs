use thiserror::Error;

/// Every failure the engine can report. Each variant carries a stable
/// machine-readable code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot certify a nonzero value within the available precision ({0})")]
    ZeroWithinPrecision(String),
    #[error("residue requested for an element of negative valuation")]
    NegativeValuation,
    #[error("computation leaves the supported subfield: {0}")]
    UnsupportedExtension(String),
    #[error("type III point not supported here: {0}")]
    TypeIIIUnsupported(String),
    #[error("oracle root counts disagree: {0}")]
    OracleInconclusive(String),
    #[error("local degree did not stabilize: {0}")]
    NoStabilization(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("residue field too small: {0}")]
    ResidueFieldTooSmall(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroWithinPrecision(_) => "ZeroWithinPrecision",
            Error::NegativeValuation => "NegativeValuation",
            Error::UnsupportedExtension(_) => "UnsupportedExtension",
            Error::TypeIIIUnsupported(_) => "TypeIIIUnsupported",
            Error::OracleInconclusive(_) => "OracleInconclusive",
            Error::NoStabilization(_) => "NoStabilization",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::ResidueFieldTooSmall(_) => "ResidueFieldTooSmall",
            Error::Syntax { .. } => "SyntaxError",
            Error::Semantic(_) => "SemanticError",
            Error::Invalid(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
