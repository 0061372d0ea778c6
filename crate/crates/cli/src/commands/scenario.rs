use pcalib::adapters::{
    fisher_pseudo_p, regression_nested_quantities, tess_two_means, tess_two_proportions, Dataset,
    EffectiveSizeForm, NestedRegressionData, SigmaSource, TwoMeansData, TwoProportionData,
};
use pcalib::adaptive_alpha::GOption;
use pcalib::bayes_factors::{bf_bic, bf_fisher_exact, bf_pbic_linear, bf_ttest, BfInputs, FisherBfInputs, TTestInputs};
use pcalib::calibration::{posterior_from_bf, rlb, rlb_xi, PriorOdds, XiShape};
use pcalib::harness::{findley_curves, FindleyConfig, FindleySampleSize, ThetaMode};
use pcalib::numerics::t_two_sided_quantile;
use pcalib::{Error, Execution, Probability};
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{prob, CmdResult, Failure};
use crate::cli::{
    Fig3Args, FindleyArgs, FisherScenarioArgs, FormArg, RegressionArgs, SampleSizeArg, ScenarioCmd, TwoMeansArgs,
};
use crate::output::{to_value, EvidenceReport, Outcome};

pub fn run(cmd: &ScenarioCmd, exec: Execution) -> CmdResult {
    match cmd {
        ScenarioCmd::Fig3(a) => fig3(a),
        ScenarioCmd::TwoMeans(a) => two_means(a),
        ScenarioCmd::Fisher(a) => fisher(a),
        ScenarioCmd::Regression(a) => regression(a),
        ScenarioCmd::Findley(a) => findley(a, exec),
    }
}

fn posterior(bf: f64, odds: PriorOdds) -> Result<f64, Error> {
    Ok(posterior_from_bf(bf, odds)?.get())
}

fn split(n: u32) -> Result<(u32, u32), Failure> {
    if n < 4 {
        return Err(Failure::Run(Error::Domain(format!("total sample size must be >= 4, got {n}"))));
    }
    Ok((n / 2, n - n / 2))
}

#[derive(Serialize)]
struct Fig3Row {
    xi0: f64,
    p: f64,
    bf: f64,
    posterior: f64,
}

fn fig3(a: &Fig3Args) -> CmdResult {
    if a.points == 0 {
        return Err(Failure::Usage("--points must be >= 1".into()));
    }
    let odds = PriorOdds::new(a.prior.pi0)?;
    let upper = (-1.0f64).exp();
    let mut rows = Vec::new();
    for &x in &a.xi0 {
        let xi = XiShape::new(x)?;
        for i in 1..=a.points {
            let p = upper * f64::from(i) / f64::from(a.points + 1);
            let bf = rlb_xi(Probability::new(p)?, xi).value;
            rows.push(Fig3Row { xi0: x, p, bf, posterior: posterior(bf, odds)? });
        }
    }
    let header = json!({ "scenario": "fig3", "inputs": { "xi0": a.xi0, "points": a.points, "pi0": a.prior.pi0 } });
    Ok(Outcome::table(header, &rows))
}

#[derive(Serialize)]
struct TwoMeansRow {
    n: u32,
    alpha: f64,
    t: f64,
    beta_hat: f64,
    c: f64,
    p_rlb: f64,
    p_pg: f64,
    p_pl: f64,
    p_bf: f64,
}

fn two_means(a: &TwoMeansArgs) -> CmdResult {
    if a.points < 2 || !(a.alpha_min > 0.0 && a.alpha_min < a.alpha_max && a.alpha_max < 1.0) {
        return Err(Failure::Usage("need 0 < --alpha-min < --alpha-max < 1 and --points >= 2".into()));
    }
    let odds = PriorOdds::new(a.prior.pi0)?;
    let form = match a.form {
        FormArg::Max => EffectiveSizeForm::Max,
        FormArg::Min => EffectiveSizeForm::Min,
    };
    let mut rows = Vec::new();
    for &n in &a.n {
        let (n1, n2) = split(n)?;
        let nf = f64::from(n);
        let d = a.sigma1_sq / f64::from(n1) + a.sigma2_sq / f64::from(n2);
        for i in 0..a.points {
            let alpha = a.alpha_min + (a.alpha_max - a.alpha_min) * f64::from(i) / f64::from(a.points - 1);
            let level = prob("alpha", alpha)?;
            let t = t_two_sided_quantile(level, nf - 1.0)?;
            let beta_hat = a.beta_hat.unwrap_or(t * d.sqrt());
            let data = TwoMeansData {
                n1,
                n2,
                sigma1_sq: a.sigma1_sq,
                sigma2_sq: a.sigma2_sq,
                beta_hat,
                t_stat: Some(t),
                equal_variance: a.sigma1_sq == a.sigma2_sq,
            };
            let tess = tess_two_means(&data, form)?;
            let b = tess.b.expect("two-means design ratio is always set");
            let inputs = BfInputs::new(level, 1, nf).with_c(tess.c).with_linear(2, b);
            rows.push(TwoMeansRow {
                n,
                alpha,
                t,
                beta_hat,
                c: tess.c,
                p_rlb: posterior(rlb(level).value, odds)?,
                p_pg: posterior(bf_bic(&inputs)?, odds)?,
                p_pl: posterior(bf_pbic_linear(&inputs)?, odds)?,
                p_bf: posterior(bf_ttest(&TTestInputs { t, n, tau0: a.tau0 })?, odds)?,
            });
        }
    }
    let mut warnings: Vec<String> = Vec::new();
    if a.form == FormArg::Min {
        warnings.push("min-form effective sample size; it differs from the max-form for unbalanced groups".into());
    }
    let header = json!({
        "scenario": "two_means",
        "inputs": {
            "n": a.n, "sigma1_sq": a.sigma1_sq, "sigma2_sq": a.sigma2_sq, "tau0": a.tau0,
            "beta_hat": a.beta_hat, "form": format!("{:?}", form).to_lowercase(), "pi0": a.prior.pi0,
        },
        "warnings": warnings,
    });
    Ok(Outcome::table(header, &rows))
}

#[derive(Serialize)]
struct FisherRow {
    n: u32,
    s1: u32,
    s2: u32,
    pseudo_p: f64,
    xi0: f64,
    p_rlb: f64,
    p_pg: f64,
    p_bf: f64,
}

fn fisher(a: &FisherScenarioArgs) -> CmdResult {
    let odds = PriorOdds::new(a.prior.pi0)?;
    let p0 = prob("p0", a.p0)?;
    let shapes = a.xi0.iter().map(|&x| XiShape::new(x)).collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    let mut skipped = 0usize;
    for &n in &a.n {
        let (n1, n2) = split(n)?;
        for s1 in 0..=n1 {
            for s2 in 0..=n2 {
                let pseudo = fisher_pseudo_p(s1, s2, n1, n2)?;
                if pseudo.get() >= 1.0 {
                    skipped += 1;
                    continue;
                }
                let tess = tess_two_proportions(&TwoProportionData::from_counts(n1, s1, n2, s2))?;
                let bf_test = bf_fisher_exact(&FisherBfInputs::with_prior_strength(s1 + s2, n1, n2, p0, a.strength))?;
                let p_bf = posterior(bf_test, odds)?;
                let p_rlb = posterior(rlb(pseudo).value, odds)?;
                for &xi in &shapes {
                    let inputs = BfInputs::new(pseudo, 1, f64::from(n)).with_xi0(xi).with_c(tess.c);
                    rows.push(FisherRow {
                        n,
                        s1,
                        s2,
                        pseudo_p: pseudo.get(),
                        xi0: xi.get(),
                        p_rlb,
                        p_pg: posterior(bf_bic(&inputs)?, odds)?,
                        p_bf,
                    });
                }
            }
        }
    }
    let header = json!({
        "scenario": "fisher",
        "inputs": { "n": a.n, "xi0": a.xi0, "p0": a.p0, "strength": a.strength, "pi0": a.prior.pi0 },
        "warnings": [format!("{skipped} outcomes with pseudo p-value 1 omitted")],
    });
    Ok(Outcome::table(header, &rows))
}

fn regression(a: &RegressionArgs) -> CmdResult {
    let ds = Dataset::from_path(&a.csv)?;
    let null: Vec<&str> = a.null.iter().map(String::as_str).collect();
    let alt: Vec<&str> = a.alt.iter().map(String::as_str).collect();
    let data = NestedRegressionData::from_dataset(&ds, &a.response, &null, &alt)?;
    let sigma = a.sigma_sq.map_or(SigmaSource::AltResidual, SigmaSource::Known);
    let q = regression_nested_quantities(&data, sigma)?;
    let level = prob("alpha", a.alpha)?;
    let n = q.n as f64;
    let pi0 = a.prior.pi0;

    let echo = json!({
        "csv": a.csv.display().to_string(), "response": a.response, "null": a.null, "alt": a.alt,
        "alpha": a.alpha, "n": q.n,
    });
    let mut evidence = vec![EvidenceReport::new(
        "rlb",
        json!({ "p": q.f_pvalue }),
        rlb(Probability::new(q.f_pvalue)?).value,
        pi0,
        vec![],
    )?];
    let mut warnings = Vec::new();
    // Each comparator is reported on its own; one that is undefined for this
    // data set becomes a warning instead of aborting the others.
    let mut push = |formula: &'static str, inputs: Value, bf: Result<f64, Error>| -> Result<(), Error> {
        match bf {
            Ok(bf) => evidence.push(EvidenceReport::new(formula, inputs, bf, pi0, vec![])?),
            Err(e) => warnings.push(format!("{formula} ({}): {e}", inputs["g"].as_str().unwrap_or("-"))),
        }
        Ok(())
    };
    push(
        "bic",
        json!({ "alpha": a.alpha, "q": 1, "n": n, "c": q.c }),
        bf_bic(&BfInputs::new(level, 1, n).with_c(q.c)),
    )?;
    for g in [GOption::Chi2, GOption::FDeviance] {
        let inputs = BfInputs::new(level, 1, n).with_c(q.c).with_linear(3, q.b).with_g(g.clone());
        push(
            "pbic_linear",
            json!({ "alpha": a.alpha, "q": 1, "n": n, "j": 3, "b": q.b, "c": q.c, "g": g.label() }),
            bf_pbic_linear(&inputs),
        )?;
    }

    let mut quantities = to_value(&q);
    if let Value::Object(m) = &mut quantities {
        m.insert("sigma_source".into(), to_value(&sigma));
    }
    let rows: Vec<Map<String, Value>> = evidence
        .iter()
        .map(|e| {
            let mut row = Map::new();
            row.insert("formula".into(), json!(e.formula));
            row.insert("g".into(), e.inputs.get("g").cloned().unwrap_or(json!("")));
            row.insert("bf".into(), json!(e.bf));
            row.insert("posterior".into(), json!(e.posterior));
            row.insert("f_pvalue".into(), json!(q.f_pvalue));
            row
        })
        .collect();
    let json = json!({
        "scenario": "regression",
        "inputs": echo,
        "quantities": quantities,
        "f_stat": q.f_stat,
        "f_pvalue": q.f_pvalue,
        "evidence": evidence.iter().map(to_value).collect::<Vec<_>>(),
        "warnings": warnings,
    });
    Ok(Outcome { json, rows: Some(rows), passed: true })
}

fn findley(a: &FindleyArgs, exec: Execution) -> CmdResult {
    let config = FindleyConfig {
        theta: if a.simulate {
            ThetaMode::Simulate { seed: a.seed.seed }
        } else {
            ThetaMode::FixedThetaHat { theta_hat: a.theta_hat }
        },
        sample_size: match a.sample_size {
            SampleSizeArg::Raw => FindleySampleSize::Raw,
            SampleSizeArg::Tess => FindleySampleSize::Tess,
        },
        g: a.g.into(),
        odds: PriorOdds::new(a.prior.pi0)?,
    };
    let rows = findley_curves(&a.n, &a.alpha, &config, exec)?;
    let header = json!({
        "scenario": "findley",
        "inputs": {
            "n": a.n, "alpha": a.alpha, "theta": to_value(&config.theta),
            "sample_size": to_value(&config.sample_size), "g": config.g.label(), "pi0": a.prior.pi0,
        },
    });
    Ok(Outcome::table(header, &rows))
}
