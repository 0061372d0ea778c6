//! Seeded Monte Carlo and exact-enumeration checks of the validity claims,
//! the `ξ0` estimator, and Findley consistency curves.
//!
//! Every simulation is split into fixed-size batches; batch `i` draws from
//! its own ChaCha stream `(seed, i)`. Batch results are merged with sums
//! only, so output is bit-identical across [`Execution`](crate::Execution)
//! modes and thread counts.

mod findley;
mod fisher;
mod rlb;
mod rng;
mod xi0;

pub use findley::{findley_curves, FindleyConfig, FindleyRow, FindleySampleSize, ThetaMode};
pub use fisher::{verify_fisher_validity, verify_fisher_validity_grid, FISHER_ENUMERATION_LIMIT};
pub use rlb::{exact_bound_cdf, proof_cdf, verify_rlb_validity};
pub use rng::{batch_rng, BATCH_SIZE};
pub use xi0::{estimate_xi0, sample_beta_xi, Xi0Estimate};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Inputs of a Monte Carlo validity run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationPlan {
    pub seed: u64,
    pub samples: u64,
    pub xi: f64,
    /// Strictly increasing levels in `(0, 1]`.
    pub alpha_grid: Vec<f64>,
}

impl SimulationPlan {
    pub fn new(seed: u64, samples: u64, xi: f64, alpha_grid: Vec<f64>) -> Result<Self> {
        let plan = SimulationPlan { seed, samples, xi, alpha_grid };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Configuration("samples must be >= 1".into()));
        }
        if !(self.xi >= 1.0) || !self.xi.is_finite() {
            return Err(Error::domain(format!("xi must be finite and >= 1, got {}", self.xi)));
        }
        if self.alpha_grid.is_empty() {
            return Err(Error::Configuration("alpha grid is empty".into()));
        }
        if self.alpha_grid.iter().any(|&a| !(a > 0.0 && a <= 1.0)) {
            return Err(Error::Configuration("alpha grid values must lie in (0, 1]".into()));
        }
        if self.alpha_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Configuration("alpha grid must be strictly increasing".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonteCarlo,
    Exact,
}

/// One checked level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationPoint {
    /// Model parameter of the point (the success probability for Fisher runs).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<f64>,
    pub alpha: f64,
    /// `P(statistic <= alpha)`, estimated or exact.
    pub probability: f64,
    /// Zero for exact points.
    pub std_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    /// Whether the estimate lies within 3 SE of `exact`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_exact: Option<bool>,
    /// `alpha - probability`.
    pub margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationResult {
    pub suite: String,
    pub method: Method,
    pub points: Vec<ValidationPoint>,
    pub worst_margin: f64,
    /// All points hold.
    pub verdict: bool,
    pub warnings: Vec<String>,
}

impl ValidationResult {
    pub(crate) fn from_points(suite: &str, method: Method, points: Vec<ValidationPoint>, warnings: Vec<String>) -> Self {
        let worst_margin = points.iter().map(|p| p.margin).fold(f64::INFINITY, f64::min);
        let verdict = points.iter().all(|p| p.holds);
        ValidationResult { suite: suite.to_owned(), method, points, worst_margin, verdict, warnings }
    }
}

/// Binomial standard error `sqrt(f(1 - f)/m)`.
pub(crate) fn binomial_se(f: f64, m: u64) -> f64 {
    (f * (1.0 - f) / m as f64).sqrt()
}
