use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |H - H†| = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Parameters are well-formed but outside the regime where an
    /// approximation has been validated.
    #[error("outside validated regime: {0}")]
    Regime(String),

    #[error("integration unstable at t = {t_ns} ns ({detail}); use a smaller step")]
    Unstable { t_ns: f64, detail: String },

    #[error("serialization: {0}")]
    Serialization(String),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    /// True for rejections caused by the numerical or physical regime rather
    /// than malformed input.
    pub fn is_regime(&self) -> bool {
        matches!(self, Error::Regime(_) | Error::Unstable { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
