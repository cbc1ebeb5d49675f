use std::fmt;

use serde::Serialize;

/// A failure reported on stderr as `{"code": ..., "message": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub code: String,
    pub message: String,
    #[serde(skip)]
    pub exit: u8,
}

pub type CliResult<T> = Result<T, CliError>;

pub mod exit {
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INVALID_PARAMS: u8 = 3;
    pub const TOO_MANY_ERASURES: u8 = 4;
    pub const DECODING_FAILURE: u8 = 5;
    pub const UNSUPPORTED: u8 = 6;
    pub const BAD_INPUT: u8 = 7;
    pub const TOO_LARGE: u8 = 8;
    pub const VERIFY_FAILED: u8 = 9;
}

impl CliError {
    pub fn new(code: &str, message: impl Into<String>, exit: u8) -> Self {
        Self {
            code: code.to_owned(),
            message: message.into(),
            exit,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new("USAGE", message, exit::USAGE)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl From<caecc::Error> for CliError {
    fn from(err: caecc::Error) -> Self {
        use caecc::Error as E;
        let exit = match &err {
            E::InvalidParams { .. } => exit::INVALID_PARAMS,
            E::TooManyErasures { .. } => exit::TOO_MANY_ERASURES,
            e if e.is_decoding_failure() => exit::DECODING_FAILURE,
            E::EncoderRequiresPrimeN { .. }
            | E::UnsupportedVariant(_)
            | E::OddEUnsupportedByFormula { .. } => exit::UNSUPPORTED,
            E::TooLargeForExactCount(_) | E::TooLargeForEnumeration { .. } => exit::TOO_LARGE,
            _ => exit::BAD_INPUT,
        };
        Self::new(err.code(), err.to_string(), exit)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::new("IO_ERROR", err.to_string(), exit::IO)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        Self::new("BAD_JSON", err.to_string(), exit::BAD_INPUT)
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        Self::new("IO_ERROR", err.to_string(), exit::IO)
    }
}
