use thiserror::Error;

/// Errors raised by the library. Each variant maps to a stable diagnostic
/// code (see [`Error::code`]) shared by the CLI and the C ABI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed sequence spec `{input}`: {reason}")]
    SeqSpec { input: String, reason: String },

    #[error("malformed polynomial `{input}`: {reason}")]
    PolyParse { input: String, reason: String },

    #[error("malformed rational `{0}`")]
    RationalParse(String),

    #[error("order overflow: {0}")]
    OrderOverflow(String),

    #[error("non-polynomial generating function: {0}")]
    NonPolynomial(String),

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported basis: {0}")]
    UnsupportedBasis(String),

    #[error("sequence value unavailable: {0}")]
    SequenceValue(String),

    #[error("non-hyperbolic corpus entry at index {index}")]
    NonHyperbolicCorpus { index: usize },

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::SeqSpec { .. } => "E_SEQSPEC",
            Error::PolyParse { .. } => "E_POLY_PARSE",
            Error::RationalParse(_) => "E_RATIONAL_PARSE",
            Error::OrderOverflow(_) => "E_ORDER_OVERFLOW",
            Error::NonPolynomial(_) => "E_NON_POLYNOMIAL",
            Error::ZeroPolynomial => "E_ZERO_POLY",
            Error::InvalidArgument(_) => "E_INVALID_ARGUMENT",
            Error::UnsupportedBasis(_) => "E_UNSUPPORTED_BASIS",
            Error::SequenceValue(_) => "E_SEQUENCE_VALUE",
            Error::NonHyperbolicCorpus { .. } => "E_CORPUS",
            Error::UnknownExample(_) => "E_UNKNOWN_EXAMPLE",
            Error::Json(_) => "E_JSON",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
