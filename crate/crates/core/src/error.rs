use thiserror::Error;

/// Errors raised by the exact engine.
///
/// Every variant names the condition that stopped the computation; no
/// variant is ever used to carry an approximate answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic arithmetic")]
    DivisionByZero,

    #[error("invalid Cartan data: {0}")]
    InvalidCartanData(String),

    #[error("unsupported root system: {0}")]
    Unsupported(String),

    #[error("singular weight {weight}: orthogonal to root {root}")]
    SingularWeight { weight: String, root: String },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} does not have half-integral coroot pairings")]
    NonIntegralWeight(String),

    #[error("torus point {point} is singular: e^alpha(g) = 1 for root {root}")]
    SingularPoint { point: String, root: String },

    #[error("elements do not form a subgroup of the Weyl group: {0}")]
    NotASubgroup(String),

    #[error("only {found} regular points with denominator <= {bound} (requested {requested})")]
    ExhaustedSearch { requested: usize, found: usize, bound: u64 },

    #[error("character route and fixed-point route disagree for {pair} at lambda {lambda}, point {point}")]
    RouteMismatch {
        pair: String,
        lambda: String,
        point: String,
    },

    #[error("invalid real form {name}: {violations} grading violation(s)")]
    InvalidRealForm { name: String, violations: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("catalog error: {0}")]
    Catalog(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
