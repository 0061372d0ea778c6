//! Sample-size adaptive significance levels.
//!
//! * [`adaptive_alpha_bic`]: the BIC-calibrated level with a caller supplied
//!   constant `C_α`.
//! * [`adaptive_alpha_pbic_adjusted`]: the same BIC structure with `C_α`
//!   replaced by the PBIC factor `exp{-(χ² + C)/2}`.
//! * [`adaptive_alpha_pbic_linear`]: the nested linear model version driven by
//!   the design ratio `b`, the alternative model size `j` and a reference
//!   quantile `g_{n,α}(q)`.
//! * [`adaptive_alpha_anova`]: balanced one-way ANOVA with `k` groups of `r`.
//!
//! Everything is evaluated in log space.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::numerics::{chi2_quantile, f_quantile_upper, ln_gamma_unchecked, Probability, Tail};
use crate::{Error, Result};

/// Arguments handed to a reference quantile `g_{n,α}(q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GContext {
    pub alpha: Probability,
    pub q: u32,
    /// Sample size index of `g`.
    pub n: f64,
    /// Residual degrees of freedom of the larger model (`n - j`).
    pub residual_df: f64,
    pub tail: Tail,
}

pub type CustomG = Arc<dyn Fn(&GContext) -> Result<f64> + Send + Sync>;

/// Choice of the reference quantile `g_{n,α}(q)` used by the linear-model
/// formulas.
#[derive(Clone, Default)]
pub enum GOption {
    /// `χ²_α(q)`, independent of `n`.
    #[default]
    Chi2,
    /// `(n - 1)·ln(1 + q·F_α(q, n - j)/(n - j))`, a deviance-scale F critical value.
    FDeviance,
    Custom(CustomG),
}

impl fmt::Debug for GOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl GOption {
    pub fn label(&self) -> &'static str {
        match self {
            GOption::Chi2 => "chi2",
            GOption::FDeviance => "f_deviance",
            GOption::Custom(_) => "custom",
        }
    }

    pub fn evaluate(&self, ctx: &GContext) -> Result<f64> {
        match self {
            GOption::Chi2 => chi2_quantile(ctx.alpha, f64::from(ctx.q), ctx.tail),
            GOption::FDeviance => {
                if !(ctx.residual_df > 0.0) {
                    return Err(Error::DegreesOfFreedom(format!(
                        "f_deviance needs positive residual degrees of freedom, got {}",
                        ctx.residual_df
                    )));
                }
                let level = match ctx.tail {
                    Tail::Upper => ctx.alpha,
                    Tail::Lower => ctx.alpha.complement(),
                };
                let q = f64::from(ctx.q);
                let f = f_quantile_upper(level, q, ctx.residual_df)?;
                Ok((ctx.n - 1.0) * (q * f / ctx.residual_df).ln_1p())
            }
            GOption::Custom(g) => g(ctx),
        }
    }
}

/// Inputs shared by the adaptive level formulas. Fields a formula does not
/// use are ignored by it.
#[derive(Debug, Clone)]
pub struct AdaptiveAlphaInputs {
    pub alpha: Probability,
    pub q: u32,
    pub n: f64,
    /// PBIC correction constant.
    pub c: f64,
    /// Constant of the plain BIC form; never defaulted.
    pub c_alpha: Option<f64>,
    /// Number of parameters in the alternative linear model.
    pub j: u32,
    /// Gram determinant ratio of the nested designs.
    pub b: f64,
    pub g: GOption,
    pub tail: Tail,
}

impl AdaptiveAlphaInputs {
    /// `c = 0`, no `C_α`, `j = q`, `b = 1`, χ² reference, upper tail.
    pub fn new(alpha: Probability, q: u32, n: f64) -> Self {
        AdaptiveAlphaInputs {
            alpha,
            q,
            n,
            c: 0.0,
            c_alpha: None,
            j: q,
            b: 1.0,
            g: GOption::Chi2,
            tail: Tail::Upper,
        }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_c_alpha(mut self, c_alpha: f64) -> Self {
        self.c_alpha = Some(c_alpha);
        self
    }

    pub fn with_linear(mut self, j: u32, b: f64) -> Self {
        self.j = j;
        self.b = b;
        self
    }

    pub fn with_g(mut self, g: GOption) -> Self {
        self.g = g;
        self
    }

    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = tail;
        self
    }

    fn validate_common(&self) -> Result<()> {
        let a = self.alpha.get();
        if a <= 0.0 || a >= 1.0 {
            return Err(Error::domain(format!("alpha must lie in (0, 1), got {a}")));
        }
        if self.q == 0 {
            return Err(Error::domain("q must be at least 1"));
        }
        if !(self.n > 0.0) || !self.n.is_finite() {
            return Err(Error::domain(format!("n must be finite and > 0, got {}", self.n)));
        }
        if !self.c.is_finite() {
            return Err(Error::domain("C must be finite"));
        }
        Ok(())
    }

    pub(crate) fn chi2(&self) -> Result<f64> {
        chi2_quantile(self.alpha, f64::from(self.q), self.tail)
    }
}

pub(crate) fn positive_bracket(name: &str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::DegenerateBracket(format!("{name} = {value}")))
    }
}

fn to_level(ln_value: f64) -> Result<Probability> {
    let v = ln_value.exp();
    if v > 1.0 {
        return Err(Error::domain(format!(
            "adaptive level evaluates to {v} > 1; inputs are outside the useful range of the formula"
        )));
    }
    Probability::new(v)
}

/// `[χ²_α(q) + q ln n]^{q/2-1} / (2^{q/2-1} n^{q/2} Γ(q/2)) × C_α`.
pub fn adaptive_alpha_bic(inputs: &AdaptiveAlphaInputs) -> Result<Probability> {
    inputs.validate_common()?;
    let c_alpha = inputs.c_alpha.ok_or_else(|| {
        Error::Configuration(
            "the BIC form needs an explicit C_alpha; use adaptive_alpha_pbic_adjusted for the PBIC strategy"
                .into(),
        )
    })?;
    if !(c_alpha > 0.0) {
        return Err(Error::Configuration(format!("C_alpha must be > 0, got {c_alpha}")));
    }
    let half_q = 0.5 * f64::from(inputs.q);
    let ln_n = inputs.n.ln();
    let bracket = positive_bracket("chi2 + q ln n", inputs.chi2()? + f64::from(inputs.q) * ln_n)?;
    let ln_value = (half_q - 1.0) * (bracket.ln() - std::f64::consts::LN_2) - half_q * ln_n
        - ln_gamma_unchecked(half_q)
        + c_alpha.ln();
    to_level(ln_value)
}

/// `[χ²_α(q) + q ln n + C]^{q/2-1} / (n^{q/2} 2^{q/2-1} Γ(q/2)) × exp{-(χ²_α(q) + C)/2}`.
pub fn adaptive_alpha_pbic_adjusted(inputs: &AdaptiveAlphaInputs) -> Result<Probability> {
    inputs.validate_common()?;
    let half_q = 0.5 * f64::from(inputs.q);
    let ln_n = inputs.n.ln();
    let chi2 = inputs.chi2()?;
    let bracket = positive_bracket("chi2 + q ln n + C", chi2 + f64::from(inputs.q) * ln_n + inputs.c)?;
    let ln_value = (half_q - 1.0) * (bracket.ln() - std::f64::consts::LN_2) - half_q * ln_n
        - ln_gamma_unchecked(half_q)
        - 0.5 * (chi2 + inputs.c);
    to_level(ln_value)
}

/// Shared core of the linear-model level: `ratio = (n - j)/(n - 1)`.
fn pbic_linear_ln(q: u32, ln_b: f64, c: f64, g: f64, ratio: f64) -> Result<f64> {
    let half_q = 0.5 * f64::from(q);
    let bracket = positive_bracket("g + ln b + C", g + ln_b + c)?;
    let exponent = 0.5 * ratio;
    Ok((half_q - 1.0) * (bracket.ln() - (2.0 / ratio).ln()) - exponent * ln_b
        - ln_gamma_unchecked(half_q)
        - exponent * (g + c))
}

fn check_linear(n: f64, j: f64, b: f64) -> Result<()> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Design(format!("design ratio b must be finite and > 0, got {b}")));
    }
    if !(n > j) {
        return Err(Error::DegreesOfFreedom(format!("need n > j, got n={n}, j={j}")));
    }
    if !(n > 1.0) {
        return Err(Error::DegreesOfFreedom(format!("need n > 1, got {n}")));
    }
    Ok(())
}

/// Nested linear model level:
///
/// ```text
/// [g + ln b + C]^{q/2-1}
/// ─────────────────────────────────────────────── × exp{-(n-j)/(2(n-1)) (g + C)}
/// b^{(n-j)/(2(n-1))} (2(n-1)/(n-j))^{q/2-1} Γ(q/2)
/// ```
pub fn adaptive_alpha_pbic_linear(inputs: &AdaptiveAlphaInputs) -> Result<Probability> {
    inputs.validate_common()?;
    let (n, j) = (inputs.n, f64::from(inputs.j));
    check_linear(n, j, inputs.b)?;
    if inputs.j < inputs.q {
        return Err(Error::domain(format!("need j >= q, got j={}, q={}", inputs.j, inputs.q)));
    }
    let g = inputs.g.evaluate(&GContext {
        alpha: inputs.alpha,
        q: inputs.q,
        n,
        residual_df: n - j,
        tail: inputs.tail,
    })?;
    let ratio = (n - j) / (n - 1.0);
    to_level(pbic_linear_ln(inputs.q, inputs.b.ln(), inputs.c, g, ratio)?)
}

/// How the balanced ANOVA formulas index the linear-model structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnovaMode {
    /// The `(r - 1)/(r - 1/k)` form with `g` indexed by the replicate count `r`.
    #[default]
    Printed,
    /// The nested-linear-model substitution `n = kr`, `j = k`; `g` indexed by `kr`.
    StrictNested,
}

/// Balanced one-way ANOVA design parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct AnovaTerms {
    pub q: u32,
    pub ln_b: f64,
    pub ratio: f64,
    pub g_ctx_n: f64,
    pub g_ctx_df: f64,
}

pub(crate) fn anova_terms(k: u32, r: u32, mode: AnovaMode) -> Result<AnovaTerms> {
    if k < 2 {
        return Err(Error::domain(format!("ANOVA needs k >= 2 groups, got {k}")));
    }
    if r < 2 {
        return Err(Error::DegreesOfFreedom(format!("ANOVA needs r >= 2 replicates, got {r}")));
    }
    let (kf, rf) = (f64::from(k), f64::from(r));
    let ln_b = -kf.ln() + (kf - 1.0) * rf.ln();
    Ok(match mode {
        AnovaMode::Printed => AnovaTerms {
            q: k - 1,
            ln_b,
            ratio: (rf - 1.0) / (rf - 1.0 / kf),
            g_ctx_n: rf,
            g_ctx_df: rf - 1.0,
        },
        AnovaMode::StrictNested => {
            let n = kf * rf;
            AnovaTerms {
                q: k - 1,
                ln_b,
                ratio: (n - kf) / (n - 1.0),
                g_ctx_n: n,
                g_ctx_df: n - kf,
            }
        }
    })
}

/// Adaptive level for `k` groups of `r` replicates. The replicate count plays
/// the role of the effective sample size.
pub fn adaptive_alpha_anova(
    k: u32,
    r: u32,
    alpha: Probability,
    c: f64,
    g: &GOption,
    mode: AnovaMode,
) -> Result<Probability> {
    let terms = anova_terms(k, r, mode)?;
    let a = alpha.get();
    if a <= 0.0 || a >= 1.0 {
        return Err(Error::domain(format!("alpha must lie in (0, 1), got {a}")));
    }
    let gv = g.evaluate(&GContext {
        alpha,
        q: terms.q,
        n: terms.g_ctx_n,
        residual_df: terms.g_ctx_df,
        tail: Tail::Upper,
    })?;
    to_level(pbic_linear_ln(terms.q, terms.ln_b, c, gv, terms.ratio)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(v: f64) -> Probability {
        Probability::new(v).unwrap()
    }

    #[test]
    fn bic_requires_c_alpha() {
        let err = adaptive_alpha_bic(&AdaptiveAlphaInputs::new(p(0.05), 1, 100.0)).unwrap_err();
        assert!(matches!(err, Error::Configuration(_)));
    }

    #[test]
    fn bic_q2_is_c_alpha_over_n() {
        for &n in &[5.0, 50.0, 1234.0] {
            let inputs = AdaptiveAlphaInputs::new(p(0.05), 2, n).with_c_alpha(0.3);
            assert_relative_eq!(adaptive_alpha_bic(&inputs).unwrap().get(), 0.3 / n, max_relative = 1e-14);
        }
    }

    #[test]
    fn bic_example() {
        let inputs = AdaptiveAlphaInputs::new(p(0.05), 1, 100.0).with_c_alpha(1.0);
        assert_relative_eq!(
            adaptive_alpha_bic(&inputs).unwrap().get(),
            0.027_453_539_948_590_98,
            max_relative = 1e-11
        );
    }

    #[test]
    fn bic_doubling_n_shrinks_by_more_than_sqrt_two() {
        let at = |n: f64| {
            adaptive_alpha_bic(&AdaptiveAlphaInputs::new(p(0.05), 1, n).with_c_alpha(1.0)).unwrap().get()
        };
        for &n in &[10.0, 100.0, 1e4] {
            assert!(at(2.0 * n) < at(n) * std::f64::consts::FRAC_1_SQRT_2);
        }
    }

    #[test]
    fn pbic_adjusted_example() {
        let inputs = AdaptiveAlphaInputs::new(p(0.05), 1, 100.0);
        assert_relative_eq!(
            adaptive_alpha_pbic_adjusted(&inputs).unwrap().get(),
            0.004_021_945_372_839_866,
            max_relative = 1e-11
        );
    }

    #[test]
    fn pbic_adjusted_q2_closed_form() {
        let chi2 = -2.0 * 0.05f64.ln();
        for &(n, c) in &[(10.0, 0.0), (80.0, 0.7), (500.0, 3.0)] {
            let inputs = AdaptiveAlphaInputs::new(p(0.05), 2, n).with_c(c);
            assert_relative_eq!(
                adaptive_alpha_pbic_adjusted(&inputs).unwrap().get(),
                (-(chi2 + c) / 2.0).exp() / n,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn pbic_adjusted_negative_bracket() {
        let inputs = AdaptiveAlphaInputs::new(p(0.05), 1, 100.0).with_c(-20.0);
        assert!(matches!(
            adaptive_alpha_pbic_adjusted(&inputs).unwrap_err(),
            Error::DegenerateBracket(_)
        ));
    }

    #[test]
    fn pbic_adjusted_vanishes_with_n() {
        let mut last = f64::INFINITY;
        for e in 1..12 {
            let n = 10f64.powi(e);
            let v = adaptive_alpha_pbic_adjusted(&AdaptiveAlphaInputs::new(p(0.05), 3, n).with_c(0.5))
                .unwrap()
                .get();
            assert!(v < last && v > 0.0);
            last = v;
        }
        assert!(last < 1e-15);
    }

    #[test]
    fn linear_example() {
        let inputs = AdaptiveAlphaInputs::new(p(0.05), 1, 82.0).with_linear(3, 100.0);
        assert_relative_eq!(
            adaptive_alpha_pbic_linear(&inputs).unwrap().get(),
            0.004_520_152_493_274_936,
            max_relative = 1e-11
        );
    }

    #[test]
    fn linear_q2_closed_form() {
        let g = -2.0 * 0.01f64.ln();
        let (n, j, b, c) = (40.0, 5u32, 12.0, 0.4);
        let inputs = AdaptiveAlphaInputs::new(p(0.01), 2, n).with_linear(j, b).with_c(c);
        let e = (n - f64::from(j)) / (2.0 * (n - 1.0));
        assert_relative_eq!(
            adaptive_alpha_pbic_linear(&inputs).unwrap().get(),
            (-e * (g + c)).exp() / b.powf(e),
            max_relative = 1e-12
        );
    }

    #[test]
    fn linear_large_n_limit_matches_pbic_adjusted_at_unit_n() {
        let linear = AdaptiveAlphaInputs::new(p(0.05), 1, 1e6).with_linear(1, 1.0);
        let adjusted = AdaptiveAlphaInputs::new(p(0.05), 1, 1.0);
        assert_relative_eq!(
            adaptive_alpha_pbic_linear(&linear).unwrap().get(),
            adaptive_alpha_pbic_adjusted(&adjusted).unwrap().get(),
            max_relative = 1e-6
        );
    }

    #[test]
    fn linear_errors() {
        let bad_b = AdaptiveAlphaInputs::new(p(0.05), 1, 20.0).with_linear(3, 0.0);
        assert!(matches!(adaptive_alpha_pbic_linear(&bad_b).unwrap_err(), Error::Design(_)));
        let bad_n = AdaptiveAlphaInputs::new(p(0.05), 1, 3.0).with_linear(3, 2.0);
        assert!(matches!(adaptive_alpha_pbic_linear(&bad_n).unwrap_err(), Error::DegreesOfFreedom(_)));
    }

    #[test]
    fn f_deviance_approaches_chi2_for_large_df() {
        let ctx = GContext { alpha: p(0.05), q: 2, n: 1e7, residual_df: 1e7 - 3.0, tail: Tail::Upper };
        let dev = GOption::FDeviance.evaluate(&ctx).unwrap();
        let chi = GOption::Chi2.evaluate(&ctx).unwrap();
        assert_relative_eq!(dev, chi, max_relative = 1e-5);
    }

    #[test]
    fn custom_g_is_used() {
        let g = GOption::Custom(Arc::new(|_| Ok(2.5)));
        let inputs = AdaptiveAlphaInputs::new(p(0.05), 2, 30.0).with_linear(2, 1.0).with_g(g);
        let e = 28.0 / 58.0;
        assert_relative_eq!(
            adaptive_alpha_pbic_linear(&inputs).unwrap().get(),
            (-e * 2.5f64).exp(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn anova_example() {
        let v = adaptive_alpha_anova(3, 10, p(0.05), 0.0, &GOption::Chi2, AnovaMode::Printed).unwrap();
        assert_relative_eq!(v.get(), 0.012_016_276_095_662_81, max_relative = 1e-11);
    }

    #[test]
    fn anova_rejects_single_replicate() {
        assert!(matches!(
            adaptive_alpha_anova(3, 1, p(0.05), 0.0, &GOption::Chi2, AnovaMode::Printed).unwrap_err(),
            Error::DegreesOfFreedom(_)
        ));
    }

    #[test]
    fn anova_modes_agree_for_chi2() {
        for k in 2..6 {
            for r in [3, 7, 20] {
                let a = adaptive_alpha_anova(k, r, p(0.05), 0.2, &GOption::Chi2, AnovaMode::Printed).unwrap();
                let b =
                    adaptive_alpha_anova(k, r, p(0.05), 0.2, &GOption::Chi2, AnovaMode::StrictNested).unwrap();
                assert_relative_eq!(a.get(), b.get(), max_relative = 1e-12);
            }
        }
    }
}
