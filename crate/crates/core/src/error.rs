use thiserror::Error;

use crate::graded::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),

    #[error("product of basis elements {0} and {1} is not homogeneous of the summed degree")]
    GradingViolation(usize, usize),

    #[error("unit does not act as identity on basis element {0}")]
    UnitViolation(usize),

    #[error("linear map is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("q-Leibniz rule fails on basis pair (degree {deg_a} #{a}, degree {deg_b} #{b}); defect {defect}")]
    LeibnizViolation {
        deg_a: usize,
        a: usize,
        deg_b: usize,
        b: usize,
        defect: Element,
    },

    #[error("d^N does not vanish on basis element #{index} of degree {degree}: {image}")]
    NilpotencyViolation {
        degree: usize,
        index: usize,
        image: Element,
    },

    #[error("d(1) = {0} is nonzero")]
    UnitNotClosed(Element),

    #[error("degree {needed} lies outside the truncation window (top degree {top})")]
    TruncationExceeded { needed: usize, top: usize },

    #[error("window too small: degree {needed} required, window ends at {top}")]
    WindowTooSmall { needed: usize, top: usize },

    #[error("ill-formed request: {0}")]
    IllFormed(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("homomorphism check failed: {0}")]
    HomomorphismViolation(String),
}

impl Error {
    /// Stable variant name, used in machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::Domain(_) => "Domain",
            Error::AssociativityViolation(..) => "AssociativityViolation",
            Error::GradingViolation(..) => "GradingViolation",
            Error::UnitViolation(_) => "UnitViolation",
            Error::NonHomogeneous(_) => "NonHomogeneous",
            Error::LeibnizViolation { .. } => "LeibnizViolation",
            Error::NilpotencyViolation { .. } => "NilpotencyViolation",
            Error::UnitNotClosed(_) => "UnitNotClosed",
            Error::TruncationExceeded { .. } => "TruncationExceeded",
            Error::WindowTooSmall { .. } => "WindowTooSmall",
            Error::IllFormed(_) => "IllFormed",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::HomomorphismViolation(_) => "HomomorphismViolation",
        }
    }

    /// Whether the error reports a failed algebraic law rather than bad input.
    pub fn is_law_violation(&self) -> bool {
        matches!(
            self,
            Error::AssociativityViolation(..)
                | Error::GradingViolation(..)
                | Error::UnitViolation(_)
                | Error::LeibnizViolation { .. }
                | Error::NilpotencyViolation { .. }
                | Error::UnitNotClosed(_)
                | Error::HomomorphismViolation(_)
        )
    }
}
