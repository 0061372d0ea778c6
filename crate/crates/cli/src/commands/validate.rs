use pcalib::adapters::Dataset;
use pcalib::harness::{
    estimate_xi0, sample_beta_xi, verify_fisher_validity, verify_rlb_validity, SimulationPlan, ValidationResult,
};
use pcalib::Execution;
use serde_json::json;

use super::CmdResult;
use crate::cli::ValidateCmd;
use crate::output::{to_value, Outcome};

fn validation_outcome(result: &ValidationResult) -> Outcome {
    let mut outcome = Outcome::table(
        json!({
            "suite": result.suite,
            "method": to_value(&result.method),
            "verdict": result.verdict,
            "worst_margin": result.worst_margin,
            "warnings": result.warnings,
        }),
        &result.points,
    );
    outcome.passed = result.verdict;
    outcome
}

pub fn run(cmd: &ValidateCmd, exec: Execution) -> CmdResult {
    match cmd {
        ValidateCmd::Rlb(a) => {
            let plan = SimulationPlan::new(a.seed.seed, a.samples, a.xi, a.alpha_grid.clone())?;
            let result = verify_rlb_validity(&plan, exec)?;
            let mut outcome = validation_outcome(&result);
            if let serde_json::Value::Object(m) = &mut outcome.json {
                m.insert("plan".into(), to_value(&plan));
            }
            Ok(outcome)
        }
        ValidateCmd::Fisher(a) => Ok(validation_outcome(&verify_fisher_validity(a.n1, a.n2, &a.p_grid, exec)?)),
        ValidateCmd::Xi0(a) => {
            let (samples, source, truth) = match (&a.input, &a.column) {
                (Some(path), Some(column)) => {
                    let ds = Dataset::from_path(path)?;
                    (ds.column(column)?.to_vec(), json!({ "file": path.display().to_string(), "column": column }), None)
                }
                _ => (
                    sample_beta_xi(a.seed.seed, a.samples, a.xi, exec)?,
                    json!({ "simulated": { "xi": a.xi, "samples": a.samples, "seed": a.seed.seed } }),
                    Some(a.xi),
                ),
            };
            let est = estimate_xi0(&samples)?;
            let verdict = truth.is_none_or(|xi| (est.xi_hat - xi).abs() <= 4.0 * est.std_error);
            let json = json!({
                "suite": "xi0",
                "source": source,
                "xi_hat": est.xi_hat,
                "std_error": est.std_error,
                "m": est.m,
                "verdict": verdict,
            });
            Ok(Outcome { json, rows: None, passed: verdict })
        }
    }
}
