use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Edge modes carry too much weight for the pulse to fit in the mode grid.
    #[error(
        "pulse not spectrally contained: |c(±{n_max})|² / max|c|² = {edge_ratio:.3e} exceeds {threshold:.0e}; raise n_max or widen the pulse"
    )]
    NotContained {
        n_max: usize,
        edge_ratio: f64,
        threshold: f64,
    },

    #[error("intensity integrates to zero")]
    ZeroIntegral,

    #[error("mode grids differ: n_max {left} vs {right}")]
    GridMismatch { left: usize, right: usize },

    #[error("indices ν = {nu} and μ = {mu} have different parity")]
    ParityMismatch { nu: i64, mu: i64 },

    #[error("norm drifted by {drift:.3e} after {steps} RK4 steps; increase the step count")]
    NormDrift { drift: f64, steps: usize },

    #[error("step too coarse for the atomic rates: rate·dt = {rate_dt:.3e} > {limit}; need at least {min_steps} steps")]
    Stiffness {
        rate_dt: f64,
        limit: f64,
        min_steps: usize,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the `kerr-sim` binary: 3 for numerical
    /// guards, 2 for everything else (an unwritable `--out` is a config error).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NormDrift { .. } | Error::Stiffness { .. } => 3,
            _ => 2,
        }
    }
}
