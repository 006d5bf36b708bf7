use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its validity domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The evaluation point lies at or beyond the right extremity.
    #[error("beyond right extremity")]
    BeyondRightExtremity,

    /// The von Mises ratio cannot be formed because the density vanishes.
    #[error("ratio undefined: density vanishes at x = {0}")]
    RatioUndefined(f64),

    /// The mean residual life integral diverges.
    #[error("not in Gumbel domain: {0}")]
    NotGumbelDomain(String),

    /// The survival function underflows at the requested tail depth.
    #[error("tail too deep: survival underflows at p = {0}")]
    TailTooDeep(f64),

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge (estimate {estimate}, error {error})")]
    QuadratureNotConverged { estimate: f64, error: f64 },

    /// A catalog or family name did not resolve.
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
