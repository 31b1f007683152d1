use thiserror::Error;

/// Everything that can go wrong in the pendulum toolkit.
///
/// Each variant carries the quantity that triggered it so callers (and the
/// CLI) can report a one-line reason without re-deriving anything.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {field}: {reason}")]
    Domain { field: &'static str, reason: String },

    #[error("state not well-contained: tail magnitude {tail:.3e}")]
    NotContained { tail: f64 },

    #[error("packet too wide for domain: periodic image overlap {overlap:.3e}")]
    PacketTooWide { overlap: f64 },

    #[error("no convergence at cutoff {cutoff}: last residual {residual:.3e}")]
    NoConvergence { cutoff: usize, residual: f64 },

    #[error("asymptotic series outside validity: correction ratio {ratio:.3}")]
    AsymptoticInvalid { ratio: f64 },

    #[error("basis too small: {size} < {required} (truncation estimate {estimate:.3e})")]
    BasisTooSmall {
        size: usize,
        required: usize,
        estimate: f64,
    },

    #[error("requested states beyond spectral accuracy: accuracy estimate {estimate:.3e}")]
    SpectralAccuracy { estimate: f64 },

    #[error("norm drift {drift:.3e} at step {step}")]
    NormDrift { drift: f64, step: usize },

    #[error("packet not contained in retained states: missing probability {missing:.3e}")]
    Containment { missing: f64 },

    #[error("no periodicity detected: {peaks} peak(s) above threshold {threshold}")]
    NoPeriodicity { peaks: usize, threshold: f64 },

    #[error("index {index} out of range (available: {available})")]
    IndexOutOfRange { index: usize, available: usize },
}

impl Error {
    pub(crate) fn domain(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            field,
            reason: reason.into(),
        }
    }

    /// Short machine-readable tag, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::NotContained { .. } => "not-contained",
            Error::PacketTooWide { .. } => "packet-too-wide",
            Error::NoConvergence { .. } => "no-convergence",
            Error::AsymptoticInvalid { .. } => "asymptotic-invalid",
            Error::BasisTooSmall { .. } => "basis-too-small",
            Error::SpectralAccuracy { .. } => "spectral-accuracy",
            Error::NormDrift { .. } => "norm-drift",
            Error::Containment { .. } => "containment",
            Error::NoPeriodicity { .. } => "no-periodicity",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
