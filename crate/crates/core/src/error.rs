//! Error type shared by all modules.
//!
//! Every variant carries a stable machine-readable code (see [`Error::code`])
//! so that CLI reports and golden files never depend on display strings.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible: {0}")]
    Reducible(String),
    #[error("extension degree {0} exceeds the configured bound {1}")]
    DegreeTooLarge(usize, usize),
    #[error("algebras are defined over different base fields")]
    BaseMismatch,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("operands live in different coefficient rings")]
    RingMismatch,
    #[error("exact division failed: {0} is not divisible by {1}")]
    NotDivisible(String, String),
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
    #[error("coefficient has no image in the target ring: {0}")]
    CoefficientLiftUndefined(String),
    #[error("Witt vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("not an Eisenstein polynomial: {0}")]
    NotEisenstein(String),
    #[error("retained output coordinate {0} depends on dropped input coordinate {1}")]
    GradingViolation(String, String),
    #[error("elements belong to different carriers or algebras")]
    CarrierMismatch,
    #[error("degree {0} exceeds the level bound {1}")]
    DegreeTooHigh(usize, usize),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("operation requires a prime residue field")]
    NotPrimeField,
    #[error("identity point does not satisfy the scheme's generators")]
    IdentityNotOnScheme,
    #[error("{0} is not an extension of {1}")]
    NotAnExtension(String, String),
    #[error("mixed-characteristic restriction requires a prime-field base")]
    NotPrimeFieldBase,
    #[error("element does not decompose over the declared basis: {0}")]
    DecompositionFailure(String),
    #[error("extension pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("coefficient is not in the span of the basis: {0}")]
    CoefficientNotInBasisSpan(String),
    #[error("exponent {0} exceeds the representable bound")]
    ExponentOverflow(u64),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code for reports and exit paths.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::Reducible(_) => "Reducible",
            Error::DegreeTooLarge(_, _) => "DegreeTooLarge",
            Error::BaseMismatch => "BaseMismatch",
            Error::SizeGuard(_) => "SizeGuard",
            Error::RingMismatch => "RingMismatch",
            Error::NotDivisible(_, _) => "NotDivisible",
            Error::MissingVariable(_) => "MissingVariable",
            Error::CoefficientLiftUndefined(_) => "CoefficientLiftUndefined",
            Error::LengthMismatch(_, _) => "LengthMismatch",
            Error::NotEisenstein(_) => "NotEisenstein",
            Error::GradingViolation(_, _) => "GradingViolation",
            Error::CarrierMismatch => "CarrierMismatch",
            Error::DegreeTooHigh(_, _) => "DegreeTooHigh",
            Error::LevelMismatch(_) => "LevelMismatch",
            Error::NotPrimeField => "NotPrimeField",
            Error::IdentityNotOnScheme => "IdentityNotOnScheme",
            Error::NotAnExtension(_, _) => "NotAnExtension",
            Error::NotPrimeFieldBase => "NotPrimeFieldBase",
            Error::DecompositionFailure(_) => "DecompositionFailure",
            Error::PatternMismatch(_) => "PatternMismatch",
            Error::CoefficientNotInBasisSpan(_) => "CoefficientNotInBasisSpan",
            Error::ExponentOverflow(_) => "ExponentOverflow",
            Error::Parse { .. } => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
