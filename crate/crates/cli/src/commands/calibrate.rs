use pcalib::calibration::{rlb_complement, rlb_xi, XiShape};
use serde_json::json;

use super::{prob, CmdResult, Failure};
use crate::cli::CalibrateArgs;
use crate::output::{EvidenceReport, Outcome};

pub fn calibrate(args: &CalibrateArgs) -> CmdResult {
    let p = prob("p", args.p)?;
    let xi = XiShape::new(args.xi0)?;
    if args.complement && xi.is_pseudo() {
        return Err(Failure::Usage("--complement is only defined for --xi0 1".into()));
    }
    let bound = if args.complement { rlb_complement(p) } else { rlb_xi(p, xi) };
    let mut warnings = Vec::new();
    if let Some(d) = bound.degenerate {
        warnings.push(format!("degenerate input: {d}"));
    }
    let formula = if xi.is_pseudo() { "rlb_xi" } else { "rlb" };
    let inputs = json!({ "p": args.p, "xi0": args.xi0, "complement": args.complement });
    let report = EvidenceReport::new(formula, inputs, bound.value, args.prior.pi0, warnings)?;
    Ok(Outcome::report(&report))
}
