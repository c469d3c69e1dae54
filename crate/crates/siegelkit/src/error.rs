//! Error type shared by every module.

use alloc::string::String;
use core::fmt;

/// Failures reported by the library.
///
/// Variants that carry a `String` name the offending parameter or inequality
/// so that reports can point at it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A certified comparison could not be decided below the precision cap.
    UndecidableAtPrecision { what: String, bits: u32 },
    /// Inversion of zero in `Q(θ)` or an exact division by zero.
    DivisionByZero,
    /// A real target was passed where a non-real one is required.
    NotNonReal,
    /// A parameter is outside the admissible range.
    ParameterViolation(String),
    /// No kernel vector exists within the requested bound (proven by
    /// exhaustive enumeration when `proven` is set).
    CertifiedBoundMiss { proven: bool, detail: String },
    /// The evaluation point is a conjugate of the target.
    PreconditionXiConjugate,
    /// A guaranteed mathematical conclusion failed; signals a bug.
    TheoremViolation(String),
    /// An approximation gap is not below 1.
    PreconditionGap(String),
    /// A named hypothesis or inequality of a worksheet failed.
    HypothesisViolation(String),
    /// Certified root counts disagree with the expected split.
    RoucheMismatch(String),
    /// The distinguished root is too small for the gap bounds.
    PreconditionXiTooSmall,
    /// Input could not be parsed.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UndecidableAtPrecision { what, bits } => {
                write!(f, "undecidable at {bits} bits: {what}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotNonReal => write!(f, "target is real"),
            Error::ParameterViolation(s) => write!(f, "parameter violation: {s}"),
            Error::CertifiedBoundMiss { proven, detail } => {
                write!(f, "no vector within bound (proven: {proven}): {detail}")
            }
            Error::PreconditionXiConjugate => write!(f, "xi is a conjugate of theta"),
            Error::TheoremViolation(s) => write!(f, "theorem violation: {s}"),
            Error::PreconditionGap(s) => write!(f, "approximation gap not below 1: {s}"),
            Error::HypothesisViolation(s) => write!(f, "hypothesis violation: {s}"),
            Error::RoucheMismatch(s) => write!(f, "root count mismatch: {s}"),
            Error::PreconditionXiTooSmall => write!(f, "|xi| too small for the gap bounds"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
