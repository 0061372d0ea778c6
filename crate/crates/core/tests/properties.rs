use approx::assert_relative_eq;
use pcalib::adapters::{tess_two_means, EffectiveSizeForm, TwoMeansData};
use pcalib::adaptive_alpha::{
    adaptive_alpha_anova, adaptive_alpha_pbic_adjusted, adaptive_alpha_pbic_linear, AdaptiveAlphaInputs, AnovaMode,
    GOption,
};
use pcalib::bayes_factors::{bf_bic, bf_pbic_linear, BfInputs};
use pcalib::calibration::{posterior_from_bf, rlb, PriorOdds};
use pcalib::numerics::{chi2_quantile, ln_gamma};
use pcalib::{Probability, Tail};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn p(x: f64) -> Probability {
    Probability::new(x).unwrap()
}

#[test]
fn chi2_quantile_inverts_reference_cdf() {
    for alpha in [0.5, 0.1, 0.05, 0.01] {
        for q in [1.0, 2.0, 3.0, 10.0] {
            let reference = ChiSquared::new(q).unwrap();
            let upper = chi2_quantile(p(alpha), q, Tail::Upper).unwrap();
            assert!((reference.sf(upper) - alpha).abs() <= 1e-10, "upper q={q} alpha={alpha}");
            let lower = chi2_quantile(p(alpha), q, Tail::Lower).unwrap();
            assert!((reference.cdf(lower) - alpha).abs() <= 1e-10, "lower q={q} alpha={alpha}");
        }
    }
}

#[test]
fn ln_gamma_recurrence() {
    let mut x = 0.5;
    while x <= 100.0 {
        let lhs = ln_gamma(x + 1.0).unwrap();
        let rhs = ln_gamma(x).unwrap() + x.ln();
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0), "x={x}");
        x += 0.173;
    }
}

#[test]
fn anova_matches_linear_substitution() {
    for k in 2u32..=6 {
        for r in 5u32..=50 {
            let (kf, rf) = (f64::from(k), f64::from(r));
            let b = rf.powf(kf - 1.0) / kf;
            for mode in [AnovaMode::Printed, AnovaMode::StrictNested] {
                let anova = adaptive_alpha_anova(k, r, p(0.05), 0.3, &GOption::Chi2, mode).unwrap().get();
                let linear = adaptive_alpha_pbic_linear(
                    &AdaptiveAlphaInputs::new(p(0.05), k - 1, kf * rf).with_c(0.3).with_linear(k, b),
                )
                .unwrap()
                .get();
                assert_relative_eq!(anova, linear, max_relative = 1e-12);
                assert!(anova > 0.0 && anova < 1.0);
            }
            let strict = adaptive_alpha_anova(k, r, p(0.05), 0.3, &GOption::FDeviance, AnovaMode::StrictNested)
                .unwrap()
                .get();
            let linear = adaptive_alpha_pbic_linear(
                &AdaptiveAlphaInputs::new(p(0.05), k - 1, kf * rf)
                    .with_c(0.3)
                    .with_linear(k, b)
                    .with_g(GOption::FDeviance),
            )
            .unwrap()
            .get();
            assert_relative_eq!(strict, linear, max_relative = 1e-12);
        }
    }
}

#[test]
fn pbic_adjusted_levels_stay_inside_unit_interval_and_vanish() {
    for q in [1u32, 2, 3, 5] {
        for alpha in [0.1, 0.05, 0.01, 0.001] {
            let mut prev = f64::INFINITY;
            for n in [10.0, 30.0, 100.0, 1e3, 1e4, 1e5, 1e6] {
                let level = adaptive_alpha_pbic_adjusted(&AdaptiveAlphaInputs::new(p(alpha), q, n).with_c(0.7))
                    .unwrap()
                    .get();
                assert!(level > 0.0 && level < 1.0);
                assert!(level < prev, "q={q} alpha={alpha} n={n}");
                prev = level;
            }
            assert!(prev < 1e-3 * alpha);
        }
    }
}

#[test]
fn two_means_bayes_factors_dominate_the_lower_bound() {
    let data = TwoMeansData {
        n1: 25,
        n2: 25,
        sigma1_sq: 1.0,
        sigma2_sq: 1.0,
        beta_hat: 0.2,
        t_stat: None,
        equal_variance: true,
    };
    let t = tess_two_means(&data, EffectiveSizeForm::Max).unwrap();
    let n = f64::from(data.n1 + data.n2);
    let mut alpha = 0.001;
    while alpha < (-1.0f64).exp() {
        let floor = posterior_from_bf(rlb(p(alpha)).value, PriorOdds::EVEN).unwrap().get();
        let inputs = BfInputs::new(p(alpha), 1, n).with_c(t.c).with_linear(2, t.b.unwrap());
        for bf in [bf_pbic_linear(&inputs).unwrap(), bf_bic(&inputs).unwrap()] {
            assert!(bf > 0.0 && bf.is_finite());
            assert!(posterior_from_bf(bf, PriorOdds::EVEN).unwrap().get() > floor, "alpha={alpha}");
        }
        alpha *= 1.25;
    }
}

proptest! {
    #[test]
    fn pbic_linear_levels_in_unit_interval(
        alpha in 1e-4f64..0.2,
        q in 1u32..6,
        extra in 5.0f64..5000.0,
        c in 0.0f64..5.0,
        ln_b in 0.0f64..8.0,
    ) {
        let n = f64::from(q) + 1.0 + extra;
        let level = adaptive_alpha_pbic_linear(
            &AdaptiveAlphaInputs::new(p(alpha), q, n).with_c(c).with_linear(q + 1, ln_b.exp()),
        );
        if let Ok(level) = level {
            prop_assert!(level.get() > 0.0 && level.get() < 1.0);
        }
    }
}
