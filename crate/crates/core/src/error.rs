use thiserror::Error;

use crate::params::ParamReason;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters ({}): {detail}", reason.code())]
    InvalidParams { reason: ParamReason, detail: String },

    #[error("rank {rank} out of range [0, {bound})")]
    RankOutOfRange { rank: String, bound: String },

    #[error("explicit encoder requires n to be prime (n={n}, p={p})")]
    EncoderRequiresPrimeN { n: usize, p: usize },

    #[error("operation not supported for this code variant: {0}")]
    UnsupportedVariant(String),

    #[error("division by zero in F_p")]
    DivisionByZero,

    #[error("{erasures} erasures exceed the outer code capability of {capacity}")]
    TooManyErasures { erasures: usize, capacity: usize },

    #[error("known syndrome coordinates are not consistent with any outer codeword")]
    InconsistentCodeword,

    #[error("syndrome coset {syndrome} is empty")]
    EmptyCoset { syndrome: u64 },

    #[error("locator polynomial of degree {degree} has {roots} admissible roots")]
    LocatorRootMismatch { degree: usize, roots: usize },

    #[error("row {row} lost {deficit} ones, more than the correctable {max}")]
    RowDeficitExceeded {
        row: usize,
        deficit: usize,
        max: usize,
    },

    #[error("corrected row does not reproduce its target syndrome")]
    SyndromeMismatch,

    #[error("row {row} is a valid symbol but lies outside the encoder image")]
    OutsideEncoderImage { row: usize },

    #[error("code too large for exact counting: {0}")]
    TooLargeForExactCount(String),

    #[error("enumeration of {size} items exceeds the limit of {limit}")]
    TooLargeForEnumeration { size: String, limit: u64 },

    #[error("bound formula requires even e (got e={e})")]
    OddEUnsupportedByFormula { e: usize },

    #[error("error pattern invalid for word: {0}")]
    PatternInvalidForWord(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("payload has {actual} bits, expected {expected}")]
    PayloadLength { expected: usize, actual: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParams { reason, .. } => reason.code(),
            Error::RankOutOfRange { .. } => "RANK_OUT_OF_RANGE",
            Error::EncoderRequiresPrimeN { .. } => "ENCODER_REQUIRES_PRIME_N",
            Error::UnsupportedVariant(_) => "UNSUPPORTED_VARIANT",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::TooManyErasures { .. } => "TOO_MANY_ERASURES",
            Error::InconsistentCodeword => "INCONSISTENT_CODEWORD",
            Error::EmptyCoset { .. } => "EMPTY_COSET",
            Error::LocatorRootMismatch { .. } => "LOCATOR_ROOT_MISMATCH",
            Error::RowDeficitExceeded { .. } => "ROW_DEFICIT_EXCEEDED",
            Error::SyndromeMismatch => "SYNDROME_MISMATCH",
            Error::OutsideEncoderImage { .. } => "OUTSIDE_ENCODER_IMAGE",
            Error::TooLargeForExactCount(_) => "TOO_LARGE_FOR_EXACT_COUNT",
            Error::TooLargeForEnumeration { .. } => "TOO_LARGE_FOR_ENUMERATION",
            Error::OddEUnsupportedByFormula { .. } => "ODD_E_UNSUPPORTED_BY_FORMULA",
            Error::PatternInvalidForWord(_) => "PATTERN_INVALID_FOR_WORD",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::InvalidSymbol(_) => "INVALID_SYMBOL",
            Error::PayloadLength { .. } => "PAYLOAD_LENGTH",
            Error::Parse { .. } => "PARSE_ERROR",
        }
    }

    /// True for errors that signal a received word outside the correction
    /// capability, as opposed to misuse of the API.
    pub fn is_decoding_failure(&self) -> bool {
        matches!(
            self,
            Error::TooManyErasures { .. }
                | Error::InconsistentCodeword
                | Error::LocatorRootMismatch { .. }
                | Error::RowDeficitExceeded { .. }
                | Error::SyndromeMismatch
                | Error::OutsideEncoderImage { .. }
                | Error::EmptyCoset { .. }
        )
    }
}
