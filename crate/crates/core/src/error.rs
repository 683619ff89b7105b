use thiserror::Error;

use crate::framed::FramingReport;
use crate::rep::ValidationReport;
use crate::sdr::CompositeReport;

/// Unified error type for every fallible operation in the crate.
///
/// `kind` gives a stable machine-readable tag; the CLI maps
/// `TheoremViolation` to its own exit code because it signals that an
/// expected structural guarantee failed, not that the input was bad.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("vertices are not adjacent: {0}")]
    NotAdjacent(String),

    #[error("ambiguous arrow: {0}")]
    AmbiguousArrow(String),

    #[error("malformed representation: {0}")]
    MalformedRepresentation(String),

    #[error("commuting relations violated ({} of them):\n{report}", report.violations.len())]
    RelationsViolated { report: ValidationReport },

    #[error("unsupported dimension vector: {0}")]
    UnsupportedDimension(String),

    #[error("zero point: all coordinates vanish")]
    ZeroPoint,

    #[error("zero object where a nonzero one is required")]
    ZeroObject,

    #[error("incompatible objects: {0}")]
    Incompatible(String),

    #[error("invalid stability function: {0}")]
    InvalidStabilityFunction(String),

    #[error("malformed framing: {0}")]
    MalformedFraming(String),

    #[error("framing conditions violated ({} issues):\n{report}", report.issues.len())]
    FramingViolated { report: FramingReport },

    #[error("support outside the first index levels: {0}")]
    UnsupportedSupport(String),

    #[error("nonzero composite in the complex ({} entries):\n{report}", report.failures.len())]
    NonzeroComposite { report: CompositeReport },

    #[error("representation is not stable: {0}")]
    NotStable(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("field error: {0}")]
    FieldError(String),

    #[error("search exhausted up to height {height}: {detail}")]
    SearchExhausted { height: u32, detail: String },

    #[error("structural guarantee failed: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error envelope.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::ResourceLimit(_) => "resource-limit",
            Error::NotFound(_) => "not-found",
            Error::NotAdjacent(_) => "not-adjacent",
            Error::AmbiguousArrow(_) => "ambiguous-arrow",
            Error::MalformedRepresentation(_) => "malformed-representation",
            Error::RelationsViolated { .. } => "relations-violated",
            Error::UnsupportedDimension(_) => "unsupported-dimension",
            Error::ZeroPoint => "zero-point",
            Error::ZeroObject => "zero-object",
            Error::Incompatible(_) => "incompatible",
            Error::InvalidStabilityFunction(_) => "invalid-stability-function",
            Error::MalformedFraming(_) => "malformed-framing",
            Error::FramingViolated { .. } => "framing-violated",
            Error::UnsupportedSupport(_) => "unsupported-support",
            Error::NonzeroComposite { .. } => "nonzero-composite",
            Error::NotStable(_) => "not-stable",
            Error::InternalInconsistency(_) => "internal-inconsistency",
            Error::FieldError(_) => "field-error",
            Error::SearchExhausted { .. } => "search-exhausted",
            Error::TheoremViolation(_) => "theorem-violation",
            Error::Parse(_) => "parse-error",
            Error::Json(_) => "json-error",
        }
    }

    /// True for errors that mean "a structural guarantee the library
    /// promises was observed to fail", as opposed to bad input.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
