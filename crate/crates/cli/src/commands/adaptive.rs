use pcalib::adapters::{adaptive_alpha_two_proportions, TwoProportionData};
use pcalib::adaptive_alpha::{
    adaptive_alpha_anova, adaptive_alpha_bic, adaptive_alpha_pbic_adjusted, adaptive_alpha_pbic_linear,
    AdaptiveAlphaInputs, GOption,
};
use serde::Serialize;
use serde_json::{json, Value};

use super::{mode_label, prob, tail_label, CmdResult, Failure};
use crate::cli::{AdaptiveCmd, StrategyArg, TwoPropArgs};
use crate::output::Outcome;

#[derive(Serialize)]
struct LevelReport {
    formula: &'static str,
    inputs: Value,
    level: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<Value>,
    warnings: Vec<String>,
}

pub fn run(cmd: &AdaptiveCmd) -> CmdResult {
    let report = match cmd {
        AdaptiveCmd::TwoProp(a) => two_prop(a)?,
        AdaptiveCmd::Anova(a) => {
            let g = GOption::from(a.g);
            let level = adaptive_alpha_anova(a.k, a.r, prob("alpha", a.alpha)?, a.c, &g, a.mode.into())?;
            LevelReport {
                formula: "anova",
                inputs: json!({ "k": a.k, "r": a.r, "alpha": a.alpha, "c": a.c, "g": g.label(), "mode": mode_label(a.mode) }),
                level: level.get(),
                details: None,
                warnings: vec![],
            }
        }
        AdaptiveCmd::Linear(a) => {
            let g = GOption::from(a.g);
            let inputs = AdaptiveAlphaInputs::new(prob("alpha", a.alpha)?, a.q, a.n)
                .with_c(a.c)
                .with_linear(a.j, a.b)
                .with_g(g.clone())
                .with_tail(a.tail.into());
            LevelReport {
                formula: "pbic_linear",
                inputs: json!({
                    "alpha": a.alpha, "q": a.q, "n": a.n, "j": a.j, "b": a.b, "c": a.c,
                    "g": g.label(), "tail": tail_label(a.tail),
                }),
                level: adaptive_alpha_pbic_linear(&inputs)?.get(),
                details: None,
                warnings: vec![],
            }
        }
        AdaptiveCmd::Generic(a) => {
            let mut inputs =
                AdaptiveAlphaInputs::new(prob("alpha", a.alpha)?, a.q, a.n).with_c(a.c).with_tail(a.tail.into());
            let (formula, level) = match a.strategy {
                StrategyArg::Bic => {
                    let c_alpha = a
                        .c_alpha
                        .ok_or_else(|| Failure::Usage("--strategy bic requires --c-alpha".into()))?;
                    inputs = inputs.with_c_alpha(c_alpha);
                    ("bic", adaptive_alpha_bic(&inputs)?)
                }
                StrategyArg::Pbic => ("pbic_adjusted", adaptive_alpha_pbic_adjusted(&inputs)?),
            };
            LevelReport {
                formula,
                inputs: json!({
                    "alpha": a.alpha, "q": a.q, "n": a.n, "c": a.c, "c_alpha": a.c_alpha,
                    "tail": tail_label(a.tail),
                }),
                level: level.get(),
                details: None,
                warnings: vec![],
            }
        }
    };
    Ok(Outcome::report(&report))
}

fn two_prop(a: &TwoPropArgs) -> Result<LevelReport, Failure> {
    let data = match (a.s1, a.s2, a.sigma1_sq, a.sigma2_sq, a.p_hat_diff) {
        (Some(s1), Some(s2), None, None, None) => TwoProportionData::from_counts(a.n1, s1, a.n2, s2),
        (None, None, Some(v1), Some(v2), Some(d)) => TwoProportionData::from_summary(a.n1, a.n2, v1, v2, d),
        _ => {
            return Err(Failure::Usage(
                "give either --s1 and --s2, or --sigma1-sq, --sigma2-sq and --p-hat-diff".into(),
            ))
        }
    };
    let (level, tess) = adaptive_alpha_two_proportions(&data, prob("alpha", a.alpha)?, a.tail.into())?;
    let mut warnings = Vec::new();
    if let Some(d) = tess.degenerate {
        warnings.push(format!("degenerate input: {d}"));
    }
    Ok(LevelReport {
        formula: "two_prop",
        inputs: json!({
            "n1": a.n1, "n2": a.n2, "s1": a.s1, "s2": a.s2, "sigma1_sq": a.sigma1_sq,
            "sigma2_sq": a.sigma2_sq, "p_hat_diff": a.p_hat_diff, "alpha": a.alpha, "tail": tail_label(a.tail),
        }),
        level: level.get(),
        details: Some(json!({ "d": tess.d, "n_e": tess.n_e, "v": tess.v, "c": tess.c })),
        warnings,
    })
}
