use thiserror::Error;

use crate::separation::SeparationKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected dim={expected}, got dim={got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("points must have at least one coordinate")]
    ZeroDimension,

    #[error("coordinates must be finite")]
    NonFinite,

    #[error("point set is empty")]
    EmptySet,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("infinite spread: the point set contains duplicate points")]
    InfiniteSpread,

    #[error("alpha = {alpha} is outside 1..={n}")]
    AlphaOutOfRange { alpha: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid clustering: {0}")]
    InvalidClustering(String),

    #[error("fewer than alpha = {alpha} points survive at iteration {iteration}")]
    InsufficientPoints { iteration: usize, alpha: usize },

    #[error("could not find {k} mutually separated quorum balls at alpha = {alpha}")]
    InstanceTooSeparationHostile { k: usize, alpha: usize },

    #[error("color {color} has no usable ball left")]
    ColorExhausted { color: usize },

    #[error("random embedding missed the distance band after {attempts} attempts")]
    EmbeddingFailed { attempts: usize },

    #[error("oracle budget exceeded: n = {n} > {limit}")]
    BudgetExceeded { n: usize, limit: usize },

    #[error("size overflow: {0}")]
    Overflow(String),

    #[error("extracted clustering failed {kind} verification")]
    VerificationFailed { kind: SeparationKind },
}

impl Error {
    /// True for the errors that mean "this α (or this instance) admits no
    /// extraction", as opposed to malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::InsufficientPoints { .. }
                | Error::InstanceTooSeparationHostile { .. }
                | Error::ColorExhausted { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
