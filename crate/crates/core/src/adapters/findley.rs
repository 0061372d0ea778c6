use serde::{Deserialize, Serialize};

use super::pbic_correction;
use crate::{Degeneracy, Error, Result};

/// The regression `yᵢ = θ/√i + εᵢ`, `i = 1..n`, with an estimate `θ̂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FindleyDesign {
    pub n: u32,
    pub theta_hat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FindleyQuantities {
    /// Harmonic number `H_n = Σ 1/i`, the information in the design.
    pub h_n: f64,
    pub d: f64,
    pub n_e: f64,
    pub v: f64,
    pub c: f64,
    /// Gram determinant of the single regressor column, `H_n`.
    pub b: f64,
    pub degenerate: Option<Degeneracy>,
}

/// `H_n`, summed from the smallest term up.
pub fn harmonic_number(n: u32) -> f64 {
    (1..=n).rev().map(|i| 1.0 / f64::from(i)).sum()
}

/// `d = 1/H_n`, `nᵉ = H_n`, `v = θ̂²/[d(1 + nᵉ)]` and the PBIC correction.
pub fn findley_quantities(design: &FindleyDesign) -> Result<FindleyQuantities> {
    if design.n == 0 {
        return Err(Error::domain("Findley design needs n >= 1"));
    }
    if !design.theta_hat.is_finite() {
        return Err(Error::domain("theta_hat must be finite"));
    }
    let h_n = harmonic_number(design.n);
    let d = 1.0 / h_n;
    let n_e = h_n;
    let v = design.theta_hat * design.theta_hat / (d * (1.0 + n_e));
    let c = pbic_correction(v);
    Ok(FindleyQuantities { h_n, d, n_e, v, c: c.value, b: h_n, degenerate: c.degenerate })
}
