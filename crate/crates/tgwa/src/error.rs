//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("affine map is singular and cannot act on points")]
    SingularAffineMap,
    #[error("unsupported automorphism shape: {0}")]
    UnsupportedAutomorphismShape(String),
    #[error("automorphism has no finite order within the search bound")]
    InfiniteOrder,
    #[error("sigma automorphisms do not pairwise commute (indices {0}, {1})")]
    NonCommutingSigmas(usize, usize),
    #[error("t_{0} is zero; the datum is not regular")]
    ZeroT(usize),
    #[error("mu entry ({0},{1}) is zero")]
    ZeroMu(usize, usize),
    #[error("minimal-polynomial search exceeded the bound for pair ({0},{1})")]
    BoundExceeded(usize, usize),
    #[error("datum is not of type (A1)^n: {0}")]
    NotTypeA1n(String),
    #[error("elements belong to different algebra profiles")]
    ProfileMismatch,
    #[error("S_{0}(q,beta) vanishes; rewriting coefficients undefined")]
    DenominatorVanishes(u32),
    #[error("lambda_2 must be nonzero (sigma_1 is invertible)")]
    ZeroLambda2,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("orders are not pairwise coprime: {0}")]
    CoprimalityViolation(String),
    #[error("finite orbits are not supported by this operation")]
    FiniteOrbitUnsupported,
    #[error("position {0} lies outside the module support")]
    PositionOutsideSupport(i64),
    #[error("module relation violated: {0}")]
    RelationViolated(String),
    #[error("simplicity check inconclusive: {0}")]
    SpinInconclusive(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("residue-field degree unavailable: supply d_phi in the scenario")]
    UnsupportedResidueComputation,
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unsupported feature: {0}")]
    UnsupportedFeature(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
