use std::fmt;

use crate::quad::QuadratureEstimate;

/// Errors from series evaluation, quadrature, state construction, and
/// propagation.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the validated parameter domain (q ∉ (0,1), non-positive
    /// scale, bad truncation level, ...).
    InvalidParameter(String),
    /// A series or infinite product did not converge within its term budget.
    NonConvergent {
        what: &'static str,
        max_terms: usize,
    },
    /// Quadrature could not reach the requested tolerance; the best estimate
    /// with its honest error bound is carried along.
    ToleranceNotMet {
        estimate: QuadratureEstimate,
        requested: f64,
    },
    /// An integrand evaluated to a non-finite value.
    InvalidDomain(String),
    /// A coefficient left the representable range at the given level.
    Overflow { level: usize },
    /// Monte Carlo standard error exceeded the requested bound.
    InsufficientSamples { stderr: f64, bound: f64 },
    /// Population of the top truncated basis state exceeded the leak
    /// threshold during propagation.
    TruncationLeak { time: f64, population: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Self::NonConvergent { what, max_terms } => {
                write!(f, "{what} did not converge within {max_terms} terms")
            }
            Self::ToleranceNotMet { estimate, requested } => write!(
                f,
                "quadrature tolerance {requested:.3e} not met (best estimate {:.16e} ± {:.3e})",
                estimate.value, estimate.abs_err
            ),
            Self::InvalidDomain(msg) => write!(f, "invalid domain: {msg}"),
            Self::Overflow { level } => {
                write!(f, "coefficient overflowed at level {level}")
            }
            Self::InsufficientSamples { stderr, bound } => write!(
                f,
                "Monte Carlo stderr {stderr:.3e} exceeds requested bound {bound:.3e}"
            ),
            Self::TruncationLeak { time, population } => write!(
                f,
                "top-level population {population:.3e} at t = {time:.6} exceeds the truncation leak threshold"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
