use serde::{Deserialize, Serialize};

use super::TessQuantities;
use crate::{Error, Result};

/// Two normal samples with known variances; the tested parameter is
/// `β = (μ₁ - μ₂)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoMeansData {
    pub n1: u32,
    pub n2: u32,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub beta_hat: f64,
    pub t_stat: Option<f64>,
    pub equal_variance: bool,
}

/// Which printed effective sample size to use for two means.
///
/// The general display takes `max{n₁²/σ₁², n₂²/σ₂²}·d`; the equal-variance
/// special case is printed as `min{n₁(1 + n₁/n₂), n₂(1 + n₂/n₁)}`. They agree
/// only for balanced groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectiveSizeForm {
    #[default]
    Max,
    Min,
}

pub fn tess_two_means(data: &TwoMeansData, form: EffectiveSizeForm) -> Result<TessQuantities> {
    if data.n1 == 0 || data.n2 == 0 {
        return Err(Error::domain("group sizes must be positive"));
    }
    for s in [data.sigma1_sq, data.sigma2_sq] {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::domain(format!("variances must be finite and > 0, got {s}")));
        }
    }
    let (n1, n2) = (f64::from(data.n1), f64::from(data.n2));
    let d = data.sigma1_sq / n1 + data.sigma2_sq / n2;
    let n_e = match form {
        EffectiveSizeForm::Max => (n1 * n1 / data.sigma1_sq).max(n2 * n2 / data.sigma2_sq) * d,
        EffectiveSizeForm::Min => {
            if !data.equal_variance {
                return Err(Error::Configuration(
                    "the min-form effective sample size is only defined for equal variances".into(),
                ));
            }
            (n1 * (1.0 + n1 / n2)).min(n2 * (1.0 + n2 / n1))
        }
    };
    let mut t = TessQuantities::from_parts(d, n_e, data.beta_hat);
    t.b = Some(two_means_design_ratio(data.n1, data.n2));
    Ok(t)
}

/// `|BᵗB| / |1ᵗ1|` for the `(1, ±1)` design: `4 n₁ n₂ / (n₁ + n₂)`.
pub fn two_means_design_ratio(n1: u32, n2: u32) -> f64 {
    let (n1, n2) = (f64::from(n1), f64::from(n2));
    4.0 * n1 * n2 / (n1 + n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;

    fn data(n1: u32, n2: u32, beta_hat: f64) -> TwoMeansData {
        TwoMeansData { n1, n2, sigma1_sq: 1.0, sigma2_sq: 1.0, beta_hat, t_stat: None, equal_variance: true }
    }

    #[test]
    fn balanced_forms_agree() {
        let max = tess_two_means(&data(25, 25, 0.3), EffectiveSizeForm::Max).unwrap();
        let min = tess_two_means(&data(25, 25, 0.3), EffectiveSizeForm::Min).unwrap();
        assert_relative_eq!(max.n_e, 50.0, max_relative = 1e-14);
        assert_relative_eq!(min.n_e, 50.0, max_relative = 1e-14);
    }

    #[test]
    fn unbalanced_forms_differ() {
        let max = tess_two_means(&data(100, 50, 0.3), EffectiveSizeForm::Max).unwrap();
        let min = tess_two_means(&data(100, 50, 0.3), EffectiveSizeForm::Min).unwrap();
        assert_relative_eq!(max.n_e, 300.0, max_relative = 1e-14);
        assert_relative_eq!(min.n_e, 75.0, max_relative = 1e-14);
    }

    #[test]
    fn zero_effect_limit() {
        let t = tess_two_means(&data(10, 12, 0.0), EffectiveSizeForm::Max).unwrap();
        assert_eq!(t.v, 0.0);
        assert_eq!(t.c, std::f64::consts::LN_2);
    }

    #[test]
    fn min_form_needs_equal_variance() {
        let mut d = data(10, 12, 0.1);
        d.equal_variance = false;
        d.sigma2_sq = 2.0;
        assert!(tess_two_means(&d, EffectiveSizeForm::Min).is_err());
    }

    #[test]
    fn design_ratio_matches_gram_determinants() {
        for &(n1, n2) in &[(1u32, 1u32), (3, 5), (10, 4)] {
            let n = (n1 + n2) as usize;
            let b = DMatrix::from_fn(n, 2, |i, j| if j == 0 || i < n1 as usize { 1.0 } else { -1.0 });
            let ones = DMatrix::from_element(n, 1, 1.0);
            let ratio = (b.transpose() * &b).determinant() / (ones.transpose() * &ones).determinant();
            assert_relative_eq!(two_means_design_ratio(n1, n2), ratio, max_relative = 1e-12);
        }
    }
}
