//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the model, solver and optimizer layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar or vector argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Vector/matrix dimensions are inconsistent with the configuration.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An operation was called on an object in an unusable state.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The CRB denominator vanished (no angular aperture).
    #[error("singular geometry: {0}")]
    SingularGeometry(String),

    /// The cone program was certified primal infeasible.
    #[error("infeasible cone program{}", fmt_ctx(.0))]
    Infeasible(String),

    /// The cone program was certified unbounded (dual infeasible).
    #[error("unbounded cone program{}", fmt_ctx(.0))]
    Unbounded(String),

    /// The interior-point method hit its iteration cap before converging.
    #[error("solver reached max iterations{}", fmt_ctx(.0))]
    MaxIterations(String),

    /// A quadratic model handed to the QP path was not positive semidefinite.
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// No feasible rank-one candidate survived rescaling.
    #[error("rank-one recovery failed: {0}")]
    RecoveryFailure(String),

    /// The requested enumeration exceeds the oracle budget.
    #[error("grid too large: {0}")]
    GridTooLarge(String),

    /// The optimizer could not construct a feasible starting point.
    #[error("infeasible at initialization: {0}")]
    InfeasibleInit(String),

    /// Configuration file problems (unknown key, bad value, missing field).
    #[error("bad config: {0}")]
    BadConfig(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn fmt_ctx(ctx: &str) -> String {
    if ctx.is_empty() {
        String::new()
    } else {
        format!(" ({ctx})")
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach iteration context to solver errors as they propagate upward.
    pub fn with_context(self, ctx: &str) -> Self {
        match self {
            Error::Infeasible(c) => Error::Infeasible(join(ctx, &c)),
            Error::Unbounded(c) => Error::Unbounded(join(ctx, &c)),
            Error::MaxIterations(c) => Error::MaxIterations(join(ctx, &c)),
            Error::RecoveryFailure(c) => Error::RecoveryFailure(join(ctx, &c)),
            other => other,
        }
    }
}

fn join(ctx: &str, inner: &str) -> String {
    if inner.is_empty() {
        ctx.to_string()
    } else {
        format!("{ctx}: {inner}")
    }
}
