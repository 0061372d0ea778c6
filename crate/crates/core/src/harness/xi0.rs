use rand::Rng;
use serde::Serialize;

use super::rng::{batch_rng, batches};
use crate::{Error, Execution, Result};

/// Beta(ξ, 1) maximum likelihood fit of a pseudo p-value sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Xi0Estimate {
    pub xi_hat: f64,
    /// Large-sample standard error `ξ̂/√m`.
    pub std_error: f64,
    pub m: usize,
}

/// `ξ̂ = -m / Σ ln pᵢ`. The estimate may fall below 1; no constraint is
/// imposed.
pub fn estimate_xi0(samples: &[f64]) -> Result<Xi0Estimate> {
    if samples.len() < 2 {
        return Err(Error::domain("estimating xi0 needs at least 2 samples"));
    }
    if let Some(bad) = samples.iter().find(|&&p| !(p > 0.0 && p < 1.0)) {
        return Err(Error::domain(format!("pseudo p-values must lie in (0, 1), got {bad}")));
    }
    let m = samples.len();
    let log_sum: f64 = samples.iter().map(|p| p.ln()).sum();
    let xi_hat = -(m as f64) / log_sum;
    Ok(Xi0Estimate { xi_hat, std_error: xi_hat / (m as f64).sqrt(), m })
}

/// `m` draws from Beta(ξ, 1) by inverse transform, `u^{1/ξ}` with `u` uniform
/// on `(0, 1)`.
pub fn sample_beta_xi(seed: u64, m: u64, xi: f64, exec: Execution) -> Result<Vec<f64>> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::domain(format!("xi must be finite and > 0, got {xi}")));
    }
    let inv = 1.0 / xi;
    let chunks = exec.map(batches(m), |(stream, count)| {
        let mut rng = batch_rng(seed, stream);
        (0..count)
            .map(|_| loop {
                let u: f64 = rng.random();
                if u > 0.0 {
                    break u.powf(inv);
                }
            })
            .collect::<Vec<f64>>()
    });
    Ok(chunks.concat())
}
