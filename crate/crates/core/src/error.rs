use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("schema violation: {0}")]
    Schema(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("floating-point overflow: {0}")]
    Overflow(String),

    #[error("no convergence with {points} points: estimate {estimate}, error estimate {error}")]
    NoConvergence { estimate: f64, error: f64, points: usize },

    #[error("zero of the function too close to the circle |z| = {radius}")]
    NearZero { radius: f64 },

    #[error("winding number {value} on |z| = {radius} is not close to an integer")]
    NonIntegralWinding { value: f64, radius: f64 },

    #[error("hyperplanes {0:?} are not in general position")]
    GeneralPosition(Vec<usize>),

    #[error("not an identity: the realized sum is not identically zero")]
    NotAnIdentity,

    #[error("inconsistent Case 2 input: {0}")]
    InconsistentCase2(String),

    #[error("class with {size} terms exceeds the subset-search cap of {cap}")]
    ClassTooLarge { size: usize, cap: usize },

    #[error("form is not invariant under the deck group: offending monomial {0}")]
    NotInvariant(String),

    #[error("denominator vanishes identically on the curve")]
    DenominatorVanishes,

    #[error("curves share a common component")]
    NotCoprime,

    #[error("no generic coordinate change found after {0} attempts")]
    DegenerateProjection(usize),
}

impl Error {
    pub fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Schema(_) => "schema",
            Error::InvalidInput(_) => "invalid_input",
            Error::Precondition(_) => "precondition",
            Error::Overflow(_) => "overflow",
            Error::NoConvergence { .. } => "no_convergence",
            Error::NearZero { .. } => "near_zero",
            Error::NonIntegralWinding { .. } => "non_integral_winding",
            Error::GeneralPosition(_) => "general_position",
            Error::NotAnIdentity => "not_an_identity",
            Error::InconsistentCase2(_) => "inconsistent_case2",
            Error::ClassTooLarge { .. } => "class_too_large",
            Error::NotInvariant(_) => "not_invariant",
            Error::DenominatorVanishes => "denominator_vanishes",
            Error::NotCoprime => "not_coprime",
            Error::DegenerateProjection(_) => "degenerate_projection",
        }
    }
}
