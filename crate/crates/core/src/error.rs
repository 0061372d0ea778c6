use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("target {target} is not bracketed by f(lo)={f_lo} and f(hi)={f_hi}")]
    Bracket { target: f64, f_lo: f64, f_hi: f64 },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("degenerate bracket: {0} must be positive")]
    DegenerateBracket(String),

    #[error("degrees of freedom error: {0}")]
    DegreesOfFreedom(String),

    #[error("design error: {0}")]
    Design(String),

    #[error("collinear predictors: {0}")]
    Collinearity(String),

    #[error("degenerate likelihood: {0}")]
    DegenerateLikelihood(String),

    #[error("data error at row {row}: {message}")]
    Data { row: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("convergence failure in {0}")]
    Convergence(&'static str),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Why a value was replaced by its analytic limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// p = 0; the bound takes its limit 0.
    PValueZero,
    /// p = 1 (or q = 1 - p = 0 for the complement calibration).
    PValueOne,
    /// v = 0; the PBIC correction takes its limit ln 2.
    ZeroSignal,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Degeneracy::PValueZero => "p = 0: returned the limit value",
            Degeneracy::PValueOne => "p = 1: returned the limit value",
            Degeneracy::ZeroSignal => "v = 0: PBIC correction set to its limit ln 2",
        };
        f.write_str(s)
    }
}

/// A value together with an optional flag marking a degenerate input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Flagged<T> {
    pub value: T,
    pub degenerate: Option<Degeneracy>,
}

impl<T> Flagged<T> {
    pub fn clean(value: T) -> Self {
        Flagged { value, degenerate: None }
    }

    pub fn flagged(value: T, why: Degeneracy) -> Self {
        Flagged { value, degenerate: Some(why) }
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate.is_some()
    }
}
