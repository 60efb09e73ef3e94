use thiserror::Error;

/// Errors raised by the engine.
///
/// Verification failures are not errors; they are reported through
/// [`crate::verifier::IdentityReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in {op}")]
    DivisionByZero { op: &'static str },

    #[error("series has zero constant coefficient and is not invertible")]
    NonUnit,

    #[error("incompatible series: {0}")]
    Incompatible(String),

    /// `(q;q)_index` vanishes, i.e. `q^index = 1`.
    #[error("degenerate q: (q;q)_{index} vanishes")]
    DegenerateQ { index: usize },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("parameters rejected: {0}")]
    RejectedParams(String),

    #[error("continued fraction did not stabilize by depth {depth}")]
    NonStabilizing { depth: usize },

    #[error("continued fraction has a non-unit partial value at level {level}")]
    NonUnitLevel { level: usize },

    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("{0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
