//! Special functions, distribution quantiles and the bracketing solver that
//! every formula in the crate depends on.

mod beta;
mod distributions;
mod gamma;
mod solve;

pub use beta::{beta_function, ln_beta, regularized_beta};
pub use distributions::{
    chi2_cdf, chi2_quantile, chi2_sf, f_quantile_upper, f_sf, t_two_sided_quantile,
    t_two_sided_sf,
};
pub use gamma::{ln_gamma, regularized_gamma};
pub use solve::{solve_monotone, DEFAULT_TOL};

pub(crate) use gamma::ln_gamma_unchecked;

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A real number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::domain(format!("probability must lie in [0, 1], got {value}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `1 - p`.
    pub fn complement(self) -> Self {
        Probability(1.0 - self.0)
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// Which tail a critical value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    Lower,
    /// `P(X > x) = level`; the default reading of `χ²_α(q)`.
    #[default]
    Upper,
}

/// A quantile request for a chi-square (`dof2 = None`) or F (`dof2 = Some`) reference distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantileSpec {
    pub level: Probability,
    pub dof: f64,
    pub dof2: Option<f64>,
    pub tail: Tail,
}

impl QuantileSpec {
    pub fn chi2(level: Probability, dof: f64) -> Self {
        QuantileSpec { level, dof, dof2: None, tail: Tail::Upper }
    }

    pub fn evaluate(&self) -> Result<f64> {
        match (self.dof2, self.tail) {
            (None, tail) => chi2_quantile(self.level, self.dof, tail),
            (Some(d2), Tail::Upper) => f_quantile_upper(self.level, self.dof, d2),
            (Some(d2), Tail::Lower) => f_quantile_upper(self.level.complement(), self.dof, d2),
        }
    }
}
