//! Bayes factors from evaluating the lower bound at an adaptive level, and
//! the two exact comparators (Normal-prior t-test and beta-binomial).
//!
//! All products are accumulated in log space.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::adaptive_alpha::{anova_terms, positive_bracket, AnovaMode, GContext, GOption};
use crate::calibration::XiShape;
use crate::numerics::{chi2_quantile, ln_beta, ln_gamma_unchecked, Probability, Tail};
use crate::{Error, Result};

/// Inputs of the calibrated Bayes factors.
#[derive(Debug, Clone)]
pub struct BfInputs {
    pub alpha: Probability,
    pub q: u32,
    pub n: f64,
    pub xi0: XiShape,
    pub c: f64,
    pub b: f64,
    pub j: u32,
    pub g: GOption,
    pub tail: Tail,
}

impl BfInputs {
    /// `ξ0 = 1`, `C = 0`, `b = 1`, `j = q`, χ² reference, upper tail.
    pub fn new(alpha: Probability, q: u32, n: f64) -> Self {
        BfInputs {
            alpha,
            q,
            n,
            xi0: XiShape::UNIFORM,
            c: 0.0,
            b: 1.0,
            j: q,
            g: GOption::Chi2,
            tail: Tail::Upper,
        }
    }

    pub fn with_xi0(mut self, xi0: XiShape) -> Self {
        self.xi0 = xi0;
        self
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
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

    fn validate(&self) -> Result<f64> {
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
        Ok(a)
    }
}

/// `ln(-α^ξ ln α)`, the level factor common to every calibrated Bayes factor.
fn ln_level_factor(alpha: f64, xi: f64) -> f64 {
    xi * alpha.ln() + (-alpha.ln()).ln()
}

/// BIC-structured calibrated Bayes factor:
///
/// ```text
/// -α^ξ0 ln α · Γ(q/2)^ξ0 · n^{ξ0 q/2} · [2 / (χ²_α(q) + q ln n + C)]^{ξ0 q/2 - (ξ0 - 1)}
/// ```
///
/// For large `ξ0` the last exponent can turn negative; this is evaluated as
/// written.
pub fn bf_bic(inputs: &BfInputs) -> Result<f64> {
    let a = inputs.validate()?;
    let xi = inputs.xi0.get();
    let q = f64::from(inputs.q);
    let half_q = 0.5 * q;
    let ln_n = inputs.n.ln();
    let chi2 = chi2_quantile(inputs.alpha, q, inputs.tail)?;
    let bracket = positive_bracket("chi2 + q ln n + C", chi2 + q * ln_n + inputs.c)?;
    let exponent = xi * half_q - (xi - 1.0);
    let ln_bf = ln_level_factor(a, xi)
        + xi * ln_gamma_unchecked(half_q)
        + xi * half_q * ln_n
        + exponent * (std::f64::consts::LN_2 - bracket.ln());
    Ok(ln_bf.exp())
}

/// The genuine p-value (`ξ0 = 1`) case of [`bf_bic`].
pub fn bf_bic_uniform(alpha: Probability, q: u32, n: f64, c: f64) -> Result<f64> {
    bf_bic(&BfInputs::new(alpha, q, n).with_c(c))
}

/// Core of the linear-model Bayes factor with `ratio = (n - j)/(n - 1)`.
pub(crate) fn pbic_linear_bf(alpha: f64, q: u32, ln_b: f64, c: f64, g: f64, ratio: f64) -> Result<f64> {
    let half_q = 0.5 * f64::from(q);
    let bracket = positive_bracket("g + ln b + C", g + ln_b + c)?;
    let ln_bf = ln_level_factor(alpha, 1.0)
        + ln_gamma_unchecked(half_q)
        + 0.5 * ratio * ln_b
        + half_q * ((2.0 / ratio).ln() - bracket.ln());
    Ok(ln_bf.exp())
}

/// Refined nested linear model Bayes factor (genuine p-values only):
///
/// ```text
/// -α ln α · Γ(q/2) · b^{(n-j)/(2(n-1))} · [2(n-1) / ((g + ln b + C)(n - j))]^{q/2}
/// ```
pub fn bf_pbic_linear(inputs: &BfInputs) -> Result<f64> {
    let a = inputs.validate()?;
    if inputs.xi0.is_pseudo() {
        return Err(Error::Configuration(
            "the linear-model Bayes factor is defined for genuine p-values only (xi0 = 1)".into(),
        ));
    }
    let (n, j, b) = (inputs.n, f64::from(inputs.j), inputs.b);
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Design(format!("design ratio b must be finite and > 0, got {b}")));
    }
    if !(n > j) || !(n > 1.0) {
        return Err(Error::DegreesOfFreedom(format!("need n > j and n > 1, got n={n}, j={j}")));
    }
    let g = inputs.g.evaluate(&GContext {
        alpha: inputs.alpha,
        q: inputs.q,
        n,
        residual_df: n - j,
        tail: inputs.tail,
    })?;
    pbic_linear_bf(a, inputs.q, b.ln(), inputs.c, g, (n - j) / (n - 1.0))
}

/// Balanced one-way ANOVA Bayes factor for `k` groups of `r` replicates.
pub fn bf_anova(k: u32, r: u32, alpha: Probability, c: f64, g: &GOption, mode: AnovaMode) -> Result<f64> {
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
    pbic_linear_bf(a, terms.q, terms.ln_b, c, gv, terms.ratio)
}

/// Two-group special case of [`bf_anova`], written out with `Γ(1/2) = √π`:
///
/// ```text
/// -α ln α · (r/2)^{(r-1)/(2r-1)} · [2π(r - 1/2) / ((g + ln(r/2) + C)(r - 1))]^{1/2}
/// ```
pub fn bf_anova_two_groups(r: u32, alpha: Probability, c: f64, g: &GOption) -> Result<f64> {
    if r < 2 {
        return Err(Error::DegreesOfFreedom(format!("ANOVA needs r >= 2 replicates, got {r}")));
    }
    let a = alpha.get();
    if a <= 0.0 || a >= 1.0 {
        return Err(Error::domain(format!("alpha must lie in (0, 1), got {a}")));
    }
    let rf = f64::from(r);
    let gv = g.evaluate(&GContext { alpha, q: 1, n: rf, residual_df: rf - 1.0, tail: Tail::Upper })?;
    let half_r = 0.5 * rf;
    let bracket = positive_bracket("g + ln(r/2) + C", gv + half_r.ln() + c)?;
    let level = -a * a.ln();
    Ok(level
        * half_r.powf((rf - 1.0) / (2.0 * rf - 1.0))
        * (2.0 * PI * (rf - 0.5) / (bracket * (rf - 1.0))).sqrt())
}

/// Two-sample t-test inputs: `t` statistic, total size `n = n1 + n2`, prior precision `τ0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestInputs {
    pub t: f64,
    pub n: u32,
    pub tau0: f64,
}

/// Bayes factor for `μ = 0` under `μ | σ² ~ N(0, σ²/τ0)`, `π(σ²) ∝ 1/σ²`:
///
/// ```text
/// ((n + τ0)/τ0)^{1/2} · [(t² τ0/(n + τ0) + l) / (t² + l)]^{(l+1)/2},   l = n - 1
/// ```
pub fn bf_ttest(inputs: &TTestInputs) -> Result<f64> {
    let TTestInputs { t, n, tau0 } = *inputs;
    if n < 2 {
        return Err(Error::domain(format!("t-test Bayes factor needs n >= 2, got {n}")));
    }
    if !(tau0 > 0.0) || !tau0.is_finite() {
        return Err(Error::domain(format!("tau0 must be finite and > 0, got {tau0}")));
    }
    if t.is_nan() {
        return Err(Error::domain("t statistic is NaN"));
    }
    let nf = f64::from(n);
    let l = nf - 1.0;
    let shrink = tau0 / (nf + tau0);
    if t.is_infinite() {
        // Large-|t| limit: shrink^{(n-1)/2}.
        return Ok((0.5 * l * shrink.ln()).exp());
    }
    let t2 = t * t;
    let ln_bf = 0.5 * (1.0 / shrink).ln() + 0.5 * (l + 1.0) * ((t2 * shrink + l).ln() - (t2 + l).ln());
    Ok(ln_bf.exp())
}

/// Beta-binomial Bayes factor inputs for `H0: p1 = p2 = p0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherBfInputs {
    /// Total successes `s1 + s2`.
    pub s: u32,
    pub n1: u32,
    pub n2: u32,
    pub a: f64,
    pub b_prior: f64,
    pub p0: Probability,
}

impl FisherBfInputs {
    /// Prior `Beta(p0·m, (1-p0)·m)` with strength `m = a + b`, so that its mean is `p0`.
    pub fn with_prior_strength(s: u32, n1: u32, n2: u32, p0: Probability, strength: f64) -> Self {
        FisherBfInputs {
            s,
            n1,
            n2,
            a: p0.get() * strength,
            b_prior: (1.0 - p0.get()) * strength,
            p0,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n1 + self.n2;
        if self.s > n {
            return Err(Error::domain(format!("s = {} exceeds n1 + n2 = {n}", self.s)));
        }
        let p0 = self.p0.get();
        if p0 == 0.0 || p0 == 1.0 {
            let interior = self.s > 0 && self.s < n;
            if interior {
                return Err(Error::DegenerateLikelihood(format!(
                    "p0 = {p0} gives zero likelihood to s = {} of {n}",
                    self.s
                )));
            }
            return Err(Error::domain("p0 must lie strictly inside (0, 1) for a proper Beta prior"));
        }
        if !(self.a > 0.0 && self.b_prior > 0.0) {
            return Err(Error::domain(format!(
                "Beta prior needs a > 0 and b > 0, got a={}, b={}",
                self.a, self.b_prior
            )));
        }
        let mean = self.a / (self.a + self.b_prior);
        if (mean - p0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "prior mean a/(a+b) = {mean} must equal p0 = {p0}"
            )));
        }
        Ok(())
    }
}

/// `B(a, b) / B(s + a, n - s + b) · p0^s (1 - p0)^{n - s}`.
pub fn bf_fisher_exact(inputs: &FisherBfInputs) -> Result<f64> {
    inputs.validate()?;
    let n = f64::from(inputs.n1 + inputs.n2);
    let s = f64::from(inputs.s);
    let p0 = inputs.p0.get();
    let mut ln_bf = ln_beta(inputs.a, inputs.b_prior)? - ln_beta(s + inputs.a, n - s + inputs.b_prior)?;
    if s > 0.0 {
        ln_bf += s * p0.ln();
    }
    if n - s > 0.0 {
        ln_bf += (n - s) * (-p0).ln_1p();
    }
    Ok(ln_bf.exp())
}
