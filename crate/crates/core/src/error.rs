use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic order {0} is invalid; every factor must have order at least 2")]
    InvalidOrder(i64),

    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: String, found: String },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid homomorphism matrix: {0}")]
    InvalidHom(String),

    #[error("map is not invertible; witness {witness:?} is {reason}")]
    NotInvertible { witness: Vec<i64>, reason: String },

    #[error("bezout is undefined for (0, 0)")]
    ZeroBezout,

    #[error("quadratic form is degenerate")]
    DegenerateForm,

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("phase table is incomplete: {0}")]
    IncompleteTable(String),

    #[error("slot {slot} out of range for {n} qudits")]
    BadSlot { slot: usize, n: usize },

    #[error("element {0:?} does not extend to an automorphism sending it to the first generator")]
    NotExtendable(Vec<i64>),

    #[error("map is not symplectic: {0}")]
    NotSymplectic(String),

    #[error("group {0} is not in divisibility-chain form")]
    NotCanonical(String),

    #[error("internal reduction failure: {0}")]
    InternalReductionFailure(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("dimension {dim} exceeds the dense cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("gate is not Clifford: {0}")]
    NonClifford(String),

    #[error("non-stabilizer preparation is not supported by the tableau backend")]
    NonStabilizer,

    #[error("malformed circuit: {0}")]
    Circuit(String),

    #[error("precondition failed: correction for k = {k:?} is not a quadratic form")]
    PreconditionFailed { k: Vec<i64> },

    #[error("resource cap exceeded after {explored} states (cap {cap})")]
    ResourceCap { explored: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A stable kebab-case name for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidOrder(_) => "invalid-order",
            Error::GroupMismatch { .. } => "group-mismatch",
            Error::InvalidElement(_) => "invalid-element",
            Error::InvalidHom(_) => "invalid-hom",
            Error::NotInvertible { .. } => "not-invertible",
            Error::ZeroBezout => "zero-bezout",
            Error::DegenerateForm => "degenerate-form",
            Error::InvalidForm(_) => "invalid-form",
            Error::IncompleteTable(_) => "incomplete-table",
            Error::BadSlot { .. } => "bad-slot",
            Error::NotExtendable(_) => "not-extendable",
            Error::NotSymplectic(_) => "not-symplectic",
            Error::NotCanonical(_) => "not-canonical",
            Error::InternalReductionFailure(_) => "internal-reduction-failure",
            Error::InvalidTableau(_) => "invalid-tableau",
            Error::DimensionCap { .. } => "dimension-cap",
            Error::NonClifford(_) => "non-clifford",
            Error::NonStabilizer => "non-stabilizer",
            Error::Circuit(_) => "circuit",
            Error::PreconditionFailed { .. } => "precondition-failed",
            Error::ResourceCap { .. } => "resource-cap",
            Error::Parse(_) => "parse",
        }
    }

    /// True for the two cap errors.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::DimensionCap { .. } | Error::ResourceCap { .. })
    }

    pub(crate) fn mismatch(expected: impl std::fmt::Display, found: impl std::fmt::Display) -> Self {
        Error::GroupMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
