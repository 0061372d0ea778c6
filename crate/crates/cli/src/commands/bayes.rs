use pcalib::adapters::fisher_pseudo_p;
use pcalib::adaptive_alpha::GOption;
use pcalib::bayes_factors::{
    bf_anova, bf_bic, bf_fisher_exact, bf_pbic_linear, bf_ttest, BfInputs, FisherBfInputs, TTestInputs,
};
use pcalib::calibration::XiShape;
use serde_json::json;

use super::{mode_label, prob, tail_label, CmdResult};
use crate::cli::{BfCmd, FisherPArgs};
use crate::output::{EvidenceReport, Outcome};

pub fn run(cmd: &BfCmd) -> CmdResult {
    let report = match cmd {
        BfCmd::Bic(a) => {
            let xi = XiShape::new(a.xi0)?;
            let inputs = BfInputs::new(prob("alpha", a.alpha)?, a.q, a.n)
                .with_xi0(xi)
                .with_c(a.c)
                .with_tail(a.tail.into());
            let formula = if xi.is_pseudo() { "bic_xi" } else { "bic" };
            EvidenceReport::new(
                formula,
                json!({ "alpha": a.alpha, "q": a.q, "n": a.n, "c": a.c, "xi0": a.xi0, "tail": tail_label(a.tail) }),
                bf_bic(&inputs)?,
                a.prior.pi0,
                vec![],
            )?
        }
        BfCmd::Pbic(a) => {
            let g = GOption::from(a.g);
            let inputs = BfInputs::new(prob("alpha", a.alpha)?, a.q, a.n)
                .with_c(a.c)
                .with_linear(a.j, a.b)
                .with_g(g.clone())
                .with_tail(a.tail.into());
            EvidenceReport::new(
                "pbic_linear",
                json!({
                    "alpha": a.alpha, "q": a.q, "n": a.n, "j": a.j, "b": a.b, "c": a.c,
                    "g": g.label(), "tail": tail_label(a.tail),
                }),
                bf_pbic_linear(&inputs)?,
                a.prior.pi0,
                vec![],
            )?
        }
        BfCmd::Anova(a) => {
            let d = &a.design;
            let g = GOption::from(d.g);
            let bf = bf_anova(d.k, d.r, prob("alpha", d.alpha)?, d.c, &g, d.mode.into())?;
            EvidenceReport::new(
                "anova",
                json!({ "k": d.k, "r": d.r, "alpha": d.alpha, "c": d.c, "g": g.label(), "mode": mode_label(d.mode) }),
                bf,
                a.prior.pi0,
                vec![],
            )?
        }
        BfCmd::Ttest(a) => EvidenceReport::new(
            "ttest",
            json!({ "t": a.t, "n": a.n, "tau0": a.tau0 }),
            bf_ttest(&TTestInputs { t: a.t, n: a.n, tau0: a.tau0 })?,
            a.prior.pi0,
            vec![],
        )?,
        BfCmd::Fisher(a) => {
            if a.s1 > a.n1 || a.s2 > a.n2 {
                return Err(pcalib::Error::Domain("successes cannot exceed group sizes".into()).into());
            }
            let inputs =
                FisherBfInputs::with_prior_strength(a.s1 + a.s2, a.n1, a.n2, prob("p0", a.p0)?, a.strength);
            EvidenceReport::new(
                "fisher_bf",
                json!({
                    "s1": a.s1, "s2": a.s2, "n1": a.n1, "n2": a.n2, "p0": a.p0,
                    "a": inputs.a, "b": inputs.b_prior,
                }),
                bf_fisher_exact(&inputs)?,
                a.prior.pi0,
                vec![],
            )?
        }
    };
    Ok(Outcome::report(&report))
}

pub fn fisher_p(a: &FisherPArgs) -> CmdResult {
    let p = fisher_pseudo_p(a.s1, a.s2, a.n1, a.n2)?;
    Ok(Outcome::report(&json!({
        "formula": "fisher_pseudo_p",
        "inputs": { "s1": a.s1, "s2": a.s2, "n1": a.n1, "n2": a.n2 },
        "p_value": p.get(),
    })))
}
