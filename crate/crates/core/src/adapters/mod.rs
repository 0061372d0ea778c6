//! Scenario adapters: effective sample sizes (TESS), PBIC correction
//! constants, design ratios and test statistics for the worked designs.

mod anova;
mod dataset;
mod findley;
mod fisher;
mod means;
mod proportions;
mod regression;

pub use anova::{anova_design_ratio, anova_design_ratio_explicit};
pub use dataset::Dataset;
pub use findley::{findley_quantities, harmonic_number, FindleyDesign, FindleyQuantities};
pub use fisher::{fisher_pseudo_p, hypergeometric_pmf};
pub use means::{tess_two_means, two_means_design_ratio, EffectiveSizeForm, TwoMeansData};
pub use proportions::{adaptive_alpha_two_proportions, tess_two_proportions, TwoProportionData};
pub use regression::{regression_nested_quantities, NestedRegressionData, RegressionQuantities, SigmaSource};

use serde::Serialize;

use crate::{Degeneracy, Flagged};

/// Scenario constants feeding the adaptive levels and Bayes factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TessQuantities {
    /// Sampling variance scale of the tested parameter estimate.
    pub d: f64,
    /// Effective sample size (TESS).
    pub n_e: f64,
    /// `θ̂² / [d (1 + nᵉ)]`.
    pub v: f64,
    /// PBIC correction `-2 ln((1 - e^{-v}) / (√2 v))`.
    pub c: f64,
    /// Design ratio, when the scenario defines one.
    pub b: Option<f64>,
    pub degenerate: Option<Degeneracy>,
}

impl TessQuantities {
    pub(crate) fn from_parts(d: f64, n_e: f64, estimate: f64) -> Self {
        let v = estimate * estimate / (d * (1.0 + n_e));
        let c = pbic_correction(v);
        TessQuantities { d, n_e, v, c: c.value, b: None, degenerate: c.degenerate }
    }
}

/// `-2 ln((1 - e^{-v}) / (√2 v))`, with the `v → 0` limit `ln 2` flagged.
///
/// `(1 - e^{-v})/v` is formed with `expm1`, which stays accurate as `v → 0`.
pub fn pbic_correction(v: f64) -> Flagged<f64> {
    if v == 0.0 {
        return Flagged::flagged(std::f64::consts::LN_2, Degeneracy::ZeroSignal);
    }
    let ratio = if v < 1e-4 {
        // 1 - v/2 + v²/6 - v³/24
        1.0 - v * (0.5 - v * (1.0 / 6.0 - v / 24.0))
    } else {
        -(-v).exp_m1() / v
    };
    Flagged::clean(std::f64::consts::LN_2 - 2.0 * ratio.ln())
}
