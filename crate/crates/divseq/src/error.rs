//! Error taxonomy shared by the whole crate.
//!
//! The distinction between `IntegralityViolation`/`DegenerateSequence` and the
//! plain usage errors matters to callers: the former two mean "the input is
//! not the kind of sequence this check applies to", which is a finding, not a
//! misuse.

use num_bigint::BigUint;
use thiserror::Error;

/// Shorten a big decimal literal for error display.
fn short(x: &BigUint) -> String {
    let s = x.to_string();
    if s.len() <= 40 {
        s
    } else {
        format!("{}...({} digits)", &s[..20], s.len())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A division that the theory promises to be exact was not.
    /// Doubles as the detector for non-divisibility sequences.
    #[error("exact division failed: {} is not divisible by {}", short(.numerator), short(.denominator))]
    IntegralityViolation {
        numerator: BigUint,
        denominator: BigUint,
    },

    /// A Lucas sequence produced a zero term inside the requested range;
    /// zero cannot join a positive-integer sequence.
    #[error("degenerate Lucas sequence: U_{index} = 0")]
    DegenerateSequence { index: usize },

    /// Parameters outside the region the operation is defined for
    /// (typically a non-positive discriminant or non-coprime P, Q).
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    /// A sequence spec string that does not match the grammar.
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),

    /// Malformed call: empty input, zero range, index out of bounds.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI taxonomy: 2 for misuse, 3 for
    /// "input is not an SDS / not in the supported region" findings.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::IntegralityViolation { .. } | Error::DegenerateSequence { .. } => 3,
            Error::UnsupportedParameters(_) | Error::InvalidSpec(_) | Error::Usage(_) => 2,
        }
    }

    /// Stable machine-readable tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IntegralityViolation { .. } => "integrality_violation",
            Error::DegenerateSequence { .. } => "degenerate_sequence",
            Error::UnsupportedParameters(_) => "unsupported_parameters",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Usage(_) => "usage",
        }
    }
}
