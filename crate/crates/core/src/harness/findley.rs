use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::rng::batch_rng;
use crate::adapters::{findley_quantities, FindleyDesign};
use crate::adaptive_alpha::{GContext, GOption};
use crate::bayes_factors::{bf_bic_uniform, pbic_linear_bf};
use crate::calibration::{posterior_from_bf, PriorOdds};
use crate::{Error, Execution, Probability, Result, Tail};

/// Source of `θ̂` for each row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum ThetaMode {
    /// The same estimate at every `n`.
    FixedThetaHat { theta_hat: f64 },
    /// Simulate `yᵢ = εᵢ` (`θ = 0`, unit variance) and take the least-squares
    /// `θ̂`. Row `n` uses stream `n` of `seed`.
    Simulate { seed: u64 },
}

impl Default for ThetaMode {
    fn default() -> Self {
        ThetaMode::FixedThetaHat { theta_hat: 0.0 }
    }
}

/// Sample size entering the BIC-type Bayes factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindleySampleSize {
    #[default]
    Raw,
    /// The effective size `H_n`.
    Tess,
}

#[derive(Debug, Clone, Default)]
pub struct FindleyConfig {
    pub theta: ThetaMode,
    pub sample_size: FindleySampleSize,
    pub g: GOption,
    pub odds: PriorOdds,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FindleyRow {
    pub n: u32,
    pub alpha: f64,
    pub h_n: f64,
    pub theta_hat: f64,
    pub v: f64,
    pub c: f64,
    pub bf_bic: f64,
    pub posterior_bic: f64,
    pub bf_pbic: f64,
    pub posterior_pbic: f64,
}

fn simulated_theta_hat(seed: u64, n: u32) -> f64 {
    let mut rng = batch_rng(seed, u64::from(n));
    let (mut xy, mut xx) = (0.0, 0.0);
    for i in 1..=n {
        let x = 1.0 / f64::from(i).sqrt();
        let y: f64 = rng.sample(StandardNormal);
        xy += x * y;
        xx += x * x;
    }
    xy / xx
}

/// BIC- and PBIC-based Bayes factors and posteriors for the design
/// `yᵢ = θ/√i + εᵢ` over `n_grid × alphas`.
///
/// The PBIC factor uses `j = 1` and design ratio `b = H_n`, so the exponent
/// ratio `(n - j)/(n - 1)` is 1 (also at `n = 1`, by continuity).
pub fn findley_curves(
    n_grid: &[u32],
    alphas: &[f64],
    config: &FindleyConfig,
    exec: Execution,
) -> Result<Vec<FindleyRow>> {
    if n_grid.is_empty() || n_grid[0] == 0 {
        return Err(Error::Configuration("n grid must be non-empty with n >= 1".into()));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Configuration("n grid must be strictly increasing".into()));
    }
    let alphas: Vec<Probability> = alphas.iter().map(|&a| Probability::new(a)).collect::<Result<_>>()?;
    if alphas.iter().any(|a| a.get() == 0.0 || a.get() == 1.0) {
        return Err(Error::domain("alpha must lie in (0, 1)"));
    }

    let rows = exec.map(n_grid.to_vec(), |n| -> Result<Vec<FindleyRow>> {
        let theta_hat = match config.theta {
            ThetaMode::FixedThetaHat { theta_hat } => theta_hat,
            ThetaMode::Simulate { seed } => simulated_theta_hat(seed, n),
        };
        let q = findley_quantities(&FindleyDesign { n, theta_hat })?;
        let size = match config.sample_size {
            FindleySampleSize::Raw => f64::from(n),
            FindleySampleSize::Tess => q.h_n,
        };
        alphas
            .iter()
            .map(|&alpha| {
                let bf_bic = bf_bic_uniform(alpha, 1, size, q.c)?;
                let g = config.g.evaluate(&GContext {
                    alpha,
                    q: 1,
                    n: f64::from(n),
                    residual_df: f64::from(n) - 1.0,
                    tail: Tail::Upper,
                })?;
                let bf_pbic = pbic_linear_bf(alpha.get(), 1, q.b.ln(), q.c, g, 1.0)?;
                Ok(FindleyRow {
                    n,
                    alpha: alpha.get(),
                    h_n: q.h_n,
                    theta_hat,
                    v: q.v,
                    c: q.c,
                    bf_bic,
                    posterior_bic: posterior_from_bf(bf_bic, config.odds)?.get(),
                    bf_pbic,
                    posterior_pbic: posterior_from_bf(bf_pbic, config.odds)?.get(),
                })
            })
            .collect()
    });
    let mut out = Vec::with_capacity(n_grid.len() * alphas.len());
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}
