use thiserror::Error;

/// Errors raised by the symbolic and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("P and Q are not coprime (common factor {0})")]
    NotCoprime(String),

    #[error("origin is not a singular point")]
    OriginNotSingular,

    #[error("origin not isolated to truncation order {0}: f(x) = Q2(x, F(x)) vanishes")]
    NotIsolated(usize),

    #[error("angular stall at r = {r:e}, theta = {theta}: |theta'| = {rate:e}")]
    AngularStall { r: f64, theta: f64, rate: f64 },

    #[error("not locally monodromic at this scale: r left [{lo:e}, {hi:e}] at theta = {theta}")]
    Escape { lo: f64, hi: f64, theta: f64 },

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("invalid canonical-form parameters: {0}")]
    CanonicalParameters(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
