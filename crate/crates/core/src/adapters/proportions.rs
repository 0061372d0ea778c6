use serde::{Deserialize, Serialize};

use super::TessQuantities;
use crate::adaptive_alpha::positive_bracket;
use crate::numerics::{chi2_quantile, Probability, Tail};
use crate::{Error, Result};

/// Two independent binomial samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoProportionData {
    pub n1: u32,
    pub n2: u32,
    pub s1: u32,
    pub s2: u32,
    /// Overrides the Bernoulli variance `p̂₁(1 - p̂₁)`.
    pub sigma1_sq: Option<f64>,
    pub sigma2_sq: Option<f64>,
    /// Overrides the MLE `s1/n1 - s2/n2`.
    pub p_hat_diff: Option<f64>,
}

impl TwoProportionData {
    pub fn from_counts(n1: u32, s1: u32, n2: u32, s2: u32) -> Self {
        TwoProportionData { n1, n2, s1, s2, sigma1_sq: None, sigma2_sq: None, p_hat_diff: None }
    }

    /// Known variances and difference estimate, no counts.
    pub fn from_summary(n1: u32, n2: u32, sigma1_sq: f64, sigma2_sq: f64, p_hat_diff: f64) -> Self {
        TwoProportionData {
            n1,
            n2,
            s1: 0,
            s2: 0,
            sigma1_sq: Some(sigma1_sq),
            sigma2_sq: Some(sigma2_sq),
            p_hat_diff: Some(p_hat_diff),
        }
    }

    pub fn n(&self) -> u32 {
        self.n1 + self.n2
    }

    fn validate(&self) -> Result<()> {
        if self.n1 == 0 || self.n2 == 0 {
            return Err(Error::domain("group sizes must be positive"));
        }
        if self.s1 > self.n1 || self.s2 > self.n2 {
            return Err(Error::domain(format!(
                "successes exceed group sizes: s1={}/{}, s2={}/{}",
                self.s1, self.n1, self.s2, self.n2
            )));
        }
        for s in [self.sigma1_sq, self.sigma2_sq].into_iter().flatten() {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::domain(format!("variances must be finite and > 0, got {s}")));
            }
        }
        Ok(())
    }

    /// Bernoulli variance with a `1/(4n)` floor when `p̂ ∈ {0, 1}`.
    fn bernoulli_variance(s: u32, n: u32) -> f64 {
        let p = f64::from(s) / f64::from(n);
        if s == 0 || s == n {
            1.0 / (4.0 * f64::from(n))
        } else {
            p * (1.0 - p)
        }
    }

    pub fn variances(&self) -> (f64, f64) {
        (
            self.sigma1_sq.unwrap_or_else(|| Self::bernoulli_variance(self.s1, self.n1)),
            self.sigma2_sq.unwrap_or_else(|| Self::bernoulli_variance(self.s2, self.n2)),
        )
    }

    pub fn difference(&self) -> f64 {
        self.p_hat_diff
            .unwrap_or_else(|| f64::from(self.s1) / f64::from(self.n1) - f64::from(self.s2) / f64::from(self.n2))
    }
}

/// `d = σ₁²/n₁ + σ₂²/n₂`, `nᵉ = max{n₁²/σ₁², n₂²/σ₂²}·d`, `v = p̂²/[d(1 + nᵉ)]`.
pub fn tess_two_proportions(data: &TwoProportionData) -> Result<TessQuantities> {
    data.validate()?;
    let (v1, v2) = data.variances();
    let (n1, n2) = (f64::from(data.n1), f64::from(data.n2));
    let d = v1 / n1 + v2 / n2;
    let n_e = (n1 * n1 / v1).max(n2 * n2 / v2) * d;
    Ok(TessQuantities::from_parts(d, n_e, data.difference()))
}

/// PBIC adaptive level for the equality of two proportions, `n = n₁ + n₂`:
///
/// ```text
/// [2 / (n π (χ²_α(1) + ln n + C))]^{1/2} × exp{-(χ²_α(1) + C)/2}
/// ```
pub fn adaptive_alpha_two_proportions(
    data: &TwoProportionData,
    alpha: Probability,
    tail: Tail,
) -> Result<(Probability, TessQuantities)> {
    let tess = tess_two_proportions(data)?;
    let n = f64::from(data.n());
    let chi2 = chi2_quantile(alpha, 1.0, tail)?;
    let bracket = positive_bracket("chi2 + ln n + C", chi2 + n.ln() + tess.c)?;
    let level = (2.0 / (n * std::f64::consts::PI * bracket)).sqrt() * (-0.5 * (chi2 + tess.c)).exp();
    Ok((Probability::new(level)?, tess))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adaptive_alpha::{adaptive_alpha_pbic_adjusted, AdaptiveAlphaInputs};
    use approx::assert_relative_eq;

    #[test]
    fn tess_example() {
        let data = TwoProportionData::from_summary(10, 10, 0.25, 0.25, 0.2);
        let t = tess_two_proportions(&data).unwrap();
        assert_relative_eq!(t.d, 0.05, max_relative = 1e-15);
        assert_relative_eq!(t.n_e, 20.0, max_relative = 1e-15);
        assert_relative_eq!(t.v, 0.038_095_238_095_238_1, max_relative = 1e-14);
        assert_relative_eq!(t.c, 0.731_121_482_853_937_5, max_relative = 1e-13);
    }

    #[test]
    fn zero_difference_limit() {
        let t = tess_two_proportions(&TwoProportionData::from_summary(10, 10, 0.25, 0.25, 0.0)).unwrap();
        assert_eq!(t.v, 0.0);
        assert_eq!(t.c, std::f64::consts::LN_2);
        assert!(t.degenerate.is_some());
    }

    #[test]
    fn swap_symmetry() {
        let a = TwoProportionData::from_counts(30, 12, 45, 9);
        let b = TwoProportionData::from_counts(45, 9, 30, 12);
        assert_eq!(tess_two_proportions(&a).unwrap(), tess_two_proportions(&b).unwrap());
    }

    #[test]
    fn bernoulli_floor() {
        let data = TwoProportionData::from_counts(8, 0, 10, 10);
        assert_eq!(data.variances(), (1.0 / 32.0, 1.0 / 40.0));
    }

    #[test]
    fn rejects_bad_counts() {
        assert!(tess_two_proportions(&TwoProportionData::from_counts(5, 6, 5, 1)).is_err());
    }

    #[test]
    fn matches_generic_pbic_adjusted() {
        let data = TwoProportionData::from_summary(10, 10, 0.25, 0.25, 0.2);
        let alpha = Probability::new(0.5).unwrap();
        let (direct, tess) = adaptive_alpha_two_proportions(&data, alpha, Tail::Upper).unwrap();
        let generic = adaptive_alpha_pbic_adjusted(&AdaptiveAlphaInputs::new(alpha, 1, 20.0).with_c(tess.c)).unwrap();
        assert_relative_eq!(direct.get(), generic.get(), max_relative = 1e-13);
        assert_relative_eq!(direct.get(), 0.048_216_395_693_881_29, max_relative = 1e-11);
    }
}
