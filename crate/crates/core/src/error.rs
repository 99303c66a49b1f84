use thiserror::Error;

/// Errors raised by the combinatorial and numerical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {dim} is not supported here (maximum {max})")]
    DimensionUnsupported { dim: usize, max: usize },

    #[error("support set {index} is empty")]
    EmptySupport { index: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("the supports generate a sublattice of rank {rank} < {dim}; the system has no finite root set")]
    RankDeficient { rank: usize, dim: usize },

    #[error("tuple is reducible: sets {subset:?} generate a sublattice of rank {rank}")]
    Reducible { subset: Vec<usize>, rank: usize },

    #[error("tuple is not analogous")]
    NotAnalogous,

    #[error("covector {0:?} is not essential for this tuple")]
    NotEssential(Vec<i64>),

    #[error("internal consistency failure: mixed volume {numerator}/{denominator} is not integral")]
    NonIntegralVolume { numerator: i128, denominator: i128 },

    #[error("integer overflow in exact geometry")]
    Overflow,

    #[error("condition 1 of the homogeneous generation lemma cannot be verified")]
    Condition1Unverifiable,

    #[error("point has a zero coordinate")]
    ZeroCoordinate,

    #[error("leading or constant coefficient vanishes")]
    DegenerateLeadingCoefficient,

    #[error("root finder did not converge")]
    ConvergenceFailure,

    #[error("found {found} roots, expected {expected}")]
    CountMismatch { found: usize, expected: usize },

    #[error("hidden-variable resultant is degenerate")]
    DegenerateResultant,

    #[error("step size underflow at s = {s}")]
    StepUnderflow { s: f64 },

    #[error("singular Jacobian")]
    SingularJacobian,

    #[error("loop signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("path tracking failed: {0}")]
    TrackingFailure(String),

    #[error("block structure violated: {0}")]
    BlockStructureViolated(String),

    #[error("divisibility violated: total winding {total} is not divisible by {modulus}")]
    DivisibilityViolated { total: i64, modulus: i64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
