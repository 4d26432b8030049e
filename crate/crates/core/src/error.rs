use thiserror::Error;

use crate::geometry::FarkasCertificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty point set or mismatched dimensions: {0}")]
    DimensionOrEmpty(String),

    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("initial transversal plus dummy point is affinely dependent")]
    DegenerateTransversal,

    #[error("degenerate pivot state: {0}")]
    DegenerateState(String),

    #[error("color {color} does not contain the origin in its convex hull")]
    HypothesisViolated {
        color: usize,
        certificate: Option<FarkasCertificate>,
        reason: String,
    },

    #[error("pivoting revisited a basis after {pivots} pivots")]
    CycleDetected { pivots: usize },

    #[error("origin lies in the convex hull of the simplex, no separating facet")]
    NotSeparable,

    #[error("game matrices must have strictly positive entries")]
    NonPositiveEntries,

    #[error("oracle answered inconsistently: {0}")]
    OracleInconsistent(String),

    #[error("extracted profile is not a Nash equilibrium")]
    NotAnEquilibrium,

    #[error("invalid arc family: {0}")]
    InvalidFamily(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("exact re-verification failed: {0}")]
    VerificationFailed(String),

    #[error("perturbation did not reach general position after {halvings} halvings")]
    PerturbationFailed { halvings: usize },
}

impl Error {
    pub(crate) fn hypothesis(color: usize, reason: impl Into<String>) -> Self {
        Error::HypothesisViolated {
            color,
            certificate: None,
            reason: reason.into(),
        }
    }

    /// Process exit status: 3 for an exhausted budget, 2 for a failed
    /// verification, 1 for everything else (malformed or unsuitable input).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 3,
            Error::VerificationFailed(_) | Error::NotAnEquilibrium | Error::OracleInconsistent(_) => 2,
            _ => 1,
        }
    }
}
