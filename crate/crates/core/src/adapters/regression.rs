use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{pbic_correction, Dataset};
use crate::numerics::f_sf;
use crate::{Error, Result};

/// Nested pair `M2: y = β₁ + β₂x₂ + ε` versus `M3: y = β₁ + β₂x₂ + β₃x₃ + ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedRegressionData {
    pub response: Vec<f64>,
    pub shared_name: String,
    pub shared: Vec<f64>,
    pub added_name: String,
    pub added: Vec<f64>,
}

impl NestedRegressionData {
    /// Picks the response and predictors by column name. The alternative
    /// set must contain the null set plus exactly one added predictor, and
    /// the null model has exactly one predictor besides the intercept.
    pub fn from_dataset(ds: &Dataset, response: &str, null: &[&str], alt: &[&str]) -> Result<Self> {
        if null.len() != 1 {
            return Err(Error::Configuration(format!(
                "the null model needs exactly one predictor, got {null:?}"
            )));
        }
        if !null.iter().all(|n| alt.contains(n)) {
            return Err(Error::Configuration(format!(
                "alternative predictors {alt:?} must include the null predictors {null:?}"
            )));
        }
        let added: Vec<&&str> = alt.iter().filter(|a| !null.contains(a)).collect();
        if added.len() != 1 || alt.len() != 2 {
            return Err(Error::Configuration(format!(
                "the alternative model must add exactly one predictor to the null model, got {alt:?}"
            )));
        }
        Ok(NestedRegressionData {
            response: ds.column(response)?.to_vec(),
            shared_name: null[0].to_owned(),
            shared: ds.column(null[0])?.to_vec(),
            added_name: (*added[0]).to_owned(),
            added: ds.column(added[0])?.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.response.len()
    }
}

/// Where the residual variance `σ²` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaSource {
    /// Residual mean square of the larger model.
    #[default]
    AltResidual,
    Known(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionQuantities {
    pub n: usize,
    /// Sample variance of the added predictor.
    pub s3_sq: f64,
    pub rho23: f64,
    /// `(n - 1) s₃² (1 - ρ₂₃²)`.
    pub b: f64,
    /// The same ratio from Gram determinants, `|X₃ᵗX₃| / |X₂ᵗX₂|`.
    pub b_gram: f64,
    pub beta2_hat: f64,
    pub beta3_hat: f64,
    pub sigma_sq: f64,
    pub d2: f64,
    pub n2_e: f64,
    pub v2: f64,
    pub d3: f64,
    pub n3_e: f64,
    pub v3: f64,
    /// Correction of the larger model minus that of the null model.
    pub c: f64,
    pub rss_null: f64,
    pub rss_alt: f64,
    pub f_stat: f64,
    pub f_pvalue: f64,
    /// Residual of the added predictor after projecting out `(1, x₂)`.
    #[serde(skip)]
    pub projected_added: Vec<f64>,
}

fn design(columns: &[&[f64]]) -> DMatrix<f64> {
    let n = columns[0].len();
    DMatrix::from_fn(n, columns.len() + 1, |i, j| if j == 0 { 1.0 } else { columns[j - 1][i] })
}

/// Least squares fit; returns coefficients and residuals.
fn ols(x: &DMatrix<f64>, y: &[f64]) -> Result<(DVector<f64>, DVector<f64>)> {
    let y = DVector::from_column_slice(y);
    let gram = x.transpose() * x;
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::Collinearity("design matrix is not of full column rank".into()))?;
    let beta = chol.solve(&(x.transpose() * &y));
    let resid = &y - x * &beta;
    Ok((beta, resid))
}

fn centered_sum_of_squares(x: &[f64]) -> f64 {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|v| (v - mean) * (v - mean)).sum()
}

/// PBIC constants, design ratio and the classical nested F test.
///
/// Per-coefficient effective sizes follow the projection form: for a
/// regressor with residualized values `x̃` (after projecting out the other
/// columns), `d = σ² / x̃ᵗx̃` and `nᵉ = x̃ᵗx̃ / maxᵢ x̃ᵢ²`. For `x₂` in the null
/// model `x̃ = x₂ - x̄₂`.
pub fn regression_nested_quantities(
    data: &NestedRegressionData,
    sigma: SigmaSource,
) -> Result<RegressionQuantities> {
    let n = data.n();
    if data.shared.len() != n || data.added.len() != n {
        return Err(Error::Configuration("response and predictors must have equal length".into()));
    }
    if n <= 3 {
        return Err(Error::DegreesOfFreedom(format!("need more than 3 observations, got {n}")));
    }
    if data.response.iter().chain(&data.shared).chain(&data.added).any(|v| !v.is_finite()) {
        return Err(Error::domain("data contain non-finite values"));
    }
    let nf = n as f64;
    let ss2 = centered_sum_of_squares(&data.shared);
    let ss3 = centered_sum_of_squares(&data.added);
    if !(ss2 > 0.0) || !(ss3 > 0.0) {
        return Err(Error::Collinearity("a predictor is constant".into()));
    }
    let mean2 = data.shared.iter().sum::<f64>() / nf;
    let mean3 = data.added.iter().sum::<f64>() / nf;
    let cross: f64 = data.shared.iter().zip(&data.added).map(|(a, b)| (a - mean2) * (b - mean3)).sum();
    let rho23 = cross / (ss2 * ss3).sqrt();
    let one_minus_rho_sq = 1.0 - rho23 * rho23;
    if one_minus_rho_sq <= 1e-12 {
        return Err(Error::Collinearity(format!(
            "'{}' and '{}' are perfectly correlated (rho = {rho23})",
            data.shared_name, data.added_name
        )));
    }
    let s3_sq = ss3 / (nf - 1.0);
    let b = (nf - 1.0) * s3_sq * one_minus_rho_sq;

    let x_null = design(&[&data.shared]);
    let x_alt = design(&[&data.shared, &data.added]);
    let (beta_null, resid_null) = ols(&x_null, &data.response)?;
    let (beta_alt, resid_alt) = ols(&x_alt, &data.response)?;
    let (_, projected) = ols(&x_null, &data.added)?;
    let b_gram = (x_alt.transpose() * &x_alt).determinant() / (x_null.transpose() * &x_null).determinant();

    let rss_null = resid_null.norm_squared();
    let rss_alt = resid_alt.norm_squared();
    let df_resid = nf - 3.0;
    let sigma_sq = match sigma {
        SigmaSource::AltResidual => rss_alt / df_resid,
        SigmaSource::Known(s) => {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::domain(format!("sigma^2 must be finite and > 0, got {s}")));
            }
            s
        }
    };
    if !(sigma_sq > 0.0) {
        return Err(Error::domain("residual variance is zero (perfect fit)"));
    }

    let max_dev2 = data.shared.iter().map(|v| (v - mean2) * (v - mean2)).fold(0.0, f64::max);
    let beta2_hat = beta_null[1];
    let d2 = sigma_sq / ss2;
    let n2_e = ss2 / max_dev2;
    let v2 = beta2_hat * beta2_hat / (d2 * (1.0 + n2_e));

    let proj_ss = projected.norm_squared();
    let max_proj2 = projected.iter().map(|v| v * v).fold(0.0, f64::max);
    let beta3_hat = beta_alt[2];
    let d3 = sigma_sq / proj_ss;
    let n3_e = proj_ss / max_proj2;
    let v3 = beta3_hat * beta3_hat / (d3 * (1.0 + n3_e));

    // Each model's term enters with its own sign: C = C(v₃) - C(v₂).
    let c = pbic_correction(v3).value - pbic_correction(v2).value;

    let f_stat = ((rss_null - rss_alt).max(0.0)) / (rss_alt / df_resid);
    let f_pvalue = f_sf(f_stat, 1.0, df_resid)?;

    Ok(RegressionQuantities {
        n,
        s3_sq,
        rho23,
        b,
        b_gram,
        beta2_hat,
        beta3_hat,
        sigma_sq,
        d2,
        n2_e,
        v2,
        d3,
        n3_e,
        v3,
        c,
        rss_null,
        rss_alt,
        f_stat,
        f_pvalue,
        projected_added: projected.iter().copied().collect(),
    })
}
