use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("{what} is out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid pulse sequence: {0}")]
    InvalidSequence(&'static str),

    #[error("invalid trace: {0}")]
    InvalidTrace(&'static str),

    #[error("ensemble must contain at least one particle")]
    EmptyEnsemble,

    #[error("phase-space arrays differ in length ({positions} positions, {velocities} velocities)")]
    LengthMismatch { positions: usize, velocities: usize },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    /// Probability leaked to the edge of the momentum window after a kick.
    #[error(
        "momentum basis too small: edge occupancy {edge_occupancy:e} with n_max = {n_max}, \
         need n_max >= {required}"
    )]
    BasisTooSmall {
        n_max: usize,
        required: usize,
        edge_occupancy: f64,
    },

    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("no local minimum found within τ ≤ {limit} after the kick at τ = {kick_time}")]
    Bracket { kick_time: f64, limit: f64 },
}
