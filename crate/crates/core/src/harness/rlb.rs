use rand::Rng;

use super::rng::{batch_rng, batches};
use super::{binomial_se, Method, SimulationPlan, ValidationPoint, ValidationResult};
use crate::calibration::{bound_supremum, invert_rlb, rlb_xi, XiShape};
use crate::{Execution, Probability, Result};

/// Exact `P(B ≤ α)` for `p ~ Beta(ξ, 1)`, where `B` is the bound at `p`.
///
/// `ρ^ξ` below the supremum of the bound on `(0, 1/e)`; between the supremum
/// and 1 only the `p < 1/e` mass counts (`e^{-ξ}`); at `α = 1` it is 1.
pub fn exact_bound_cdf(alpha: Probability, xi: XiShape) -> Result<f64> {
    let (a, x) = (alpha.get(), xi.get());
    if a >= 1.0 {
        return Ok(1.0);
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    if a >= bound_supremum(x) {
        return Ok((-x).exp());
    }
    Ok(invert_rlb(alpha, x)?.get().powf(x))
}

/// `ρ^ξ` with `ρ` the increasing-branch preimage of `min(α, sup)`. This
/// ignores the atom of `B` at 1, so at `α = 1, ξ = 1` it equals `e^{-1}`.
pub fn proof_cdf(alpha: Probability, xi: XiShape) -> Result<f64> {
    let x = xi.get();
    if alpha.get() == 0.0 {
        return Ok(0.0);
    }
    let capped = Probability::new(alpha.get().min(bound_supremum(x)))?;
    Ok(invert_rlb(capped, x)?.get().powf(x))
}

/// Draws `p = u^{1/ξ}` and checks `P(B ≤ α) ≤ α + 3 SE` at each level, plus
/// the exact value `F_B(α)` for comparison.
pub fn verify_rlb_validity(plan: &SimulationPlan, exec: Execution) -> Result<ValidationResult> {
    plan.validate()?;
    let xi = XiShape::new(plan.xi)?;
    let grid = &plan.alpha_grid;
    let inv_xi = 1.0 / plan.xi;
    let seed = plan.seed;

    let per_batch = exec.map(batches(plan.samples), |(stream, count)| {
        let mut rng = batch_rng(seed, stream);
        // hist[i] counts draws with grid[i-1] < B <= grid[i].
        let mut hist = vec![0u64; grid.len() + 1];
        for _ in 0..count {
            let u = 1.0 - rng.random::<f64>();
            let p = Probability::new(u.powf(inv_xi)).expect("u^(1/xi) lies in (0, 1]");
            let b = rlb_xi(p, xi).value;
            hist[grid.partition_point(|&a| a < b)] += 1;
        }
        hist
    });
    let mut hist = vec![0u64; grid.len() + 1];
    for h in per_batch {
        for (acc, v) in hist.iter_mut().zip(h) {
            *acc += v;
        }
    }

    let m = plan.samples;
    let mut cumulative = 0u64;
    let mut points = Vec::with_capacity(grid.len());
    for (i, &alpha) in grid.iter().enumerate() {
        cumulative += hist[i];
        let f_hat = cumulative as f64 / m as f64;
        let se = binomial_se(f_hat, m);
        let exact = exact_bound_cdf(Probability::new(alpha)?, xi)?;
        let exact_se = binomial_se(exact, m);
        points.push(ValidationPoint {
            parameter: None,
            alpha,
            probability: f_hat,
            std_error: se,
            exact: Some(exact),
            matches_exact: Some((f_hat - exact).abs() <= 3.0 * exact_se),
            margin: alpha - f_hat,
            holds: f_hat <= alpha + 3.0 * se && exact <= alpha,
        });
    }
    Ok(ValidationResult::from_points("rlb", Method::MonteCarlo, points, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(x: f64) -> Probability {
        Probability::new(x).unwrap()
    }

    #[test]
    fn exact_cdf_examples() {
        let one = XiShape::new(1.0).unwrap();
        assert_relative_eq!(exact_bound_cdf(p(0.05), one).unwrap(), 0.003_202_368_718_774_390, max_relative = 1e-10);
        assert_eq!(exact_bound_cdf(p(1.0), one).unwrap(), 1.0);
        assert_relative_eq!(proof_cdf(p(1.0), one).unwrap(), (-1.0f64).exp(), max_relative = 1e-12);
        let two = XiShape::new(2.0).unwrap();
        let rho = invert_rlb(p(0.1), 2.0).unwrap().get();
        assert!(exact_bound_cdf(p(0.1), two).unwrap() < rho);
        assert_relative_eq!(exact_bound_cdf(p(0.9), two).unwrap(), (-2.0f64).exp());
    }

    #[test]
    fn small_run_is_valid_and_deterministic() {
        let plan = SimulationPlan::new(11, 20_000, 1.0, vec![0.01, 0.05, 0.3, 1.0]).unwrap();
        let a = verify_rlb_validity(&plan, Execution::Sequential).unwrap();
        let b = verify_rlb_validity(&plan, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.verdict);
        assert_eq!(a.points.last().unwrap().probability, 1.0);
    }
}
