use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter or argument violated a documented invariant. The message
    /// names the violated invariant.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An optimization problem has no feasible point (e.g. the throughput
    /// floor exceeds the maximum achievable throughput).
    #[error("infeasible problem: {0}")]
    Infeasible(String),

    /// Adaptive quadrature exhausted its subdivision budget. Carries the best
    /// estimate and the corresponding error bound.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e}")]
    QuadratureNonConvergence { estimate: f64, error_bound: f64 },

    /// A quantity left the range in which an operation is meaningful
    /// (e.g. outage probability underflow in a slope fit).
    #[error("range error: {0}")]
    Range(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
