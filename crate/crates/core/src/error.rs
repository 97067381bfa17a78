use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A field of the problem statement failed validation.
    #[error("invalid `{field}`: {reason}")]
    InvalidSpec { field: &'static str, reason: String },

    /// An operation needed a field that the problem statement does not carry.
    #[error("missing required field `{0}`")]
    Missing(&'static str),

    /// Evaluation time outside the trajectory domain.
    #[error("t = {t} s outside trajectory domain [0, {tf}] s")]
    OutOfDomain { t: f64, tf: f64 },

    /// No protocol exists for the requested horizon and bound. Carries the
    /// shortest horizon that would be feasible for the same `d` and `delta`.
    #[error("infeasible: gamma = {gamma} > 1; minimum feasible horizon is tf_min = {tf_min} s")]
    Infeasible { gamma: f64, tf_min: f64 },

    /// The protocol kind carries no optimality claim to certify.
    #[error("no optimality certificate for protocol kind `{0}`")]
    UnsupportedKind(&'static str),

    /// The trap drive returned a non-finite position.
    #[error("trap position is not finite at t = {t} s")]
    NonFiniteTrap { t: f64 },

    /// An iterative solver hit its iteration cap.
    #[error("solver did not converge: {reason}")]
    NoConvergence { reason: String },

    /// Probability reached the edge of the wavefunction grid.
    #[error("wavefunction grid too small: edge density {edge_density:e} exceeds 1e-8")]
    GridTooSmall { edge_density: f64 },

    /// Generic argument error.
    #[error("{0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
