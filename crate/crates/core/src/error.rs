use thiserror::Error;

/// Errors produced by the jet, germ, locus and conservation-law layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jets do not share base point and order: {0}")]
    InvalidJetCombination(String),

    #[error("jet order exhausted: need order {needed}, have {available}")]
    JetOrderExhausted { needed: usize, available: usize },

    #[error("composition base point mismatch: outer base {outer}, inner value {inner}")]
    CompositionBasePointMismatch { outer: f64, inner: f64 },

    #[error("invalid polynomial spec: {0}")]
    InvalidSpec(String),

    #[error("corank-two point: both Jacobian rows vanish")]
    CorankTwo,

    #[error("not a diffeomorphism: {0}")]
    NotADiffeomorphism(String),

    #[error("curve is not regular at t = {0}")]
    NotRegularCurve(f64),

    #[error("invalid box domain: {0}")]
    InvalidBox(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
