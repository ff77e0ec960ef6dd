use thiserror::Error;

/// Errors surfaced by the evaluators and the splitting machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation point lies on the light cone (x.x = 0)")]
    OnLightCone,

    #[error("massless Dirac spinors are not supported (m must be > 0)")]
    MasslessDirac,

    #[error("momentum is lightlike (p.p = 0); kernel is singular there")]
    NullMomentum,

    #[error("species `{0}` has no partner entry")]
    MissingPartner(String),

    #[error("partner map is not an involution: {0} -> {1} -> {2}")]
    PartnerNotInvolutive(String, String, String),

    #[error("contraction pattern is not admissible for these vertices: {0}")]
    InadmissiblePattern(String),

    #[error("freedom coefficient of order {got} exceeds the singular order {omega}")]
    FreedomOrderTooHigh { got: usize, omega: i32 },

    #[error("distribution is not causal; use the frame-dependent splitting")]
    NotCausal,

    #[error("retarded part at spacelike p needs branch metadata for the continuation")]
    NoContinuationRule,

    #[error("quadrature did not reach the requested tolerance (estimate {estimate:e}, requested {requested:e})")]
    QuadratureAccuracy { estimate: f64, requested: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
