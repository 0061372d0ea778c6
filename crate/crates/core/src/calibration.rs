//! The robust lower bound (RLB) family of minimum Bayes factors and the map
//! from a Bayes factor to the posterior probability of the null.
//!
//! Under `H0` a p-value is modelled as `Beta(ξ0, 1)`: `ξ0 = 1` is a genuine
//! (uniform) p-value, `ξ0 > 1` a pseudo p-value. Against the alternatives
//! `Beta(ξ, 1)`, `0 < ξ < 1`, the smallest attainable Bayes factor is
//!
//! ```text
//! B_L(p, ξ0) = -e · ξ0 · p^ξ0 · ln p    for p < 1/e
//!            = 1                        otherwise
//! ```

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::numerics::{solve_monotone, Probability};
use crate::{Degeneracy, Error, Flagged, Result};

const INV_E: f64 = 1.0 / E;

/// Shape `ξ0 >= 1` of the null distribution `Beta(ξ0, 1)` of a (pseudo) p-value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct XiShape(f64);

impl XiShape {
    /// The genuine p-value case.
    pub const UNIFORM: XiShape = XiShape(1.0);

    pub fn new(xi0: f64) -> Result<Self> {
        if xi0 >= 1.0 && xi0.is_finite() {
            Ok(XiShape(xi0))
        } else {
            Err(Error::domain(format!(
                "xi0 must be a finite value >= 1 (1 = p-value, > 1 = pseudo p-value), got {xi0}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_pseudo(self) -> bool {
        self.0 > 1.0
    }
}

impl Default for XiShape {
    fn default() -> Self {
        XiShape::UNIFORM
    }
}

impl TryFrom<f64> for XiShape {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        XiShape::new(v)
    }
}

impl From<XiShape> for f64 {
    fn from(x: XiShape) -> f64 {
        x.0
    }
}

/// Prior mass `π0` on the point null; `π1 = 1 - π0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PriorOdds(f64);

impl PriorOdds {
    pub const EVEN: PriorOdds = PriorOdds(0.5);

    pub fn new(pi0: f64) -> Result<Self> {
        if pi0 > 0.0 && pi0 < 1.0 {
            Ok(PriorOdds(pi0))
        } else {
            Err(Error::domain(format!("prior mass pi0 must lie in (0, 1), got {pi0}")))
        }
    }

    pub fn pi0(self) -> f64 {
        self.0
    }

    pub fn pi1(self) -> f64 {
        1.0 - self.0
    }

    /// `π1 / π0`; exactly 1 for even odds.
    pub fn alternative_ratio(self) -> f64 {
        self.pi1() / self.0
    }
}

impl Default for PriorOdds {
    fn default() -> Self {
        PriorOdds::EVEN
    }
}

impl TryFrom<f64> for PriorOdds {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        PriorOdds::new(v)
    }
}

impl From<PriorOdds> for f64 {
    fn from(o: PriorOdds) -> f64 {
        o.0
    }
}

fn bound_formula(p: f64, xi: f64) -> f64 {
    E * xi * p.powf(xi) * (-p.ln())
}

/// `-e·p·ln p` for `p < 1/e`, else 1. `p = 0` yields the limit 0, flagged.
pub fn rlb(p: Probability) -> Flagged<f64> {
    rlb_xi(p, XiShape::UNIFORM)
}

/// `-e·ξ0·p^ξ0·ln p` for `p < 1/e`, else 1.
pub fn rlb_xi(p: Probability, xi: XiShape) -> Flagged<f64> {
    let p = p.get();
    if p == 0.0 {
        return Flagged::flagged(0.0, Degeneracy::PValueZero);
    }
    if p < INV_E {
        Flagged::clean(bound_formula(p, xi.get()))
    } else {
        Flagged::clean(1.0)
    }
}

/// The `-e·q·ln q` calibration with `q = 1 - p`.
pub fn rlb_complement(p: Probability) -> Flagged<f64> {
    let q = p.complement();
    if q.get() == 0.0 {
        return Flagged::flagged(0.0, Degeneracy::PValueOne);
    }
    rlb(q)
}

/// Upper end of the interval on which `ρ ↦ -e·ξ·ρ^ξ·ln ρ` increases,
/// capped at `1/e`.
fn monotone_upper(xi: f64) -> f64 {
    if xi >= 1.0 {
        INV_E
    } else {
        (-1.0 / xi).exp()
    }
}

/// Largest value of the bound formula on `(0, monotone_upper(ξ)]`.
///
/// Equals 1 for `ξ <= 1` and `ξ·e^{1-ξ} < 1` for `ξ > 1`.
pub fn bound_supremum(xi: f64) -> f64 {
    if xi >= 1.0 {
        xi * (1.0 - xi).exp()
    } else {
        1.0
    }
}

/// The unique `ρ` on the increasing branch with `-e·ξ·ρ^ξ·ln ρ = alpha`.
///
/// `xi` may be any positive shape here: values in `(0, 1)` describe the
/// alternative family. Levels above [`bound_supremum`] have no solution below
/// `1/e` and are rejected.
pub fn invert_rlb(alpha: Probability, xi: f64) -> Result<Probability> {
    let a = alpha.get();
    if a == 0.0 {
        return Err(Error::domain("invert_rlb requires alpha > 0"));
    }
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::domain(format!("xi must be finite and > 0, got {xi}")));
    }
    let upper = monotone_upper(xi);
    let sup = bound_supremum(xi);
    if a >= sup {
        if a - sup <= 4.0 * f64::EPSILON {
            return Probability::new(upper);
        }
        return Err(Error::domain(format!(
            "alpha={a} exceeds the largest bound value {sup} attainable below 1/e for xi={xi}"
        )));
    }
    let f = |rho: f64| if rho <= 0.0 { 0.0 } else { bound_formula(rho, xi) };
    let rho = solve_monotone(f, 0.0, upper, a, 0.0)?;
    Probability::new(rho)
}

/// Posterior probability of `H0`: `[1 + (π1/π0) / bf]^{-1}`.
///
/// With even prior odds this is the lower bound `[1 + 1/B]^{-1}` when `bf` is a
/// minimum Bayes factor.
pub fn posterior_from_bf(bf: f64, odds: PriorOdds) -> Result<Probability> {
    if !(bf > 0.0) {
        return Err(Error::domain(format!("Bayes factor must be > 0, got {bf}")));
    }
    if bf.is_infinite() {
        return Probability::new(1.0);
    }
    Probability::new(1.0 / (1.0 + odds.alternative_ratio() / bf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn p(v: f64) -> Probability {
        Probability::new(v).unwrap()
    }

    fn xi(v: f64) -> XiShape {
        XiShape::new(v).unwrap()
    }

    #[test]
    fn rlb_examples() {
        assert_eq!(rlb(p(INV_E)).value, 1.0);
        assert_eq!(rlb(p(0.9)).value, 1.0);
        assert_relative_eq!(rlb(p(0.05)).value, 0.407_162_230_106_505_8, max_relative = 1e-13);
    }

    #[test]
    fn rlb_zero_is_flagged() {
        let b = rlb(p(0.0));
        assert_eq!(b.value, 0.0);
        assert_eq!(b.degenerate, Some(Degeneracy::PValueZero));
        assert!(!rlb(p(0.01)).is_degenerate());
    }

    #[test]
    fn rlb_xi_examples() {
        assert_eq!(rlb_xi(p(0.05), xi(1.0)).value, rlb(p(0.05)).value);
        assert_relative_eq!(
            rlb_xi(p(0.05), xi(2.0)).value,
            0.040_716_223_010_650_58,
            max_relative = 1e-13
        );
        assert_eq!(rlb_xi(p(0.5), xi(1.3)).value, 1.0);
    }

    #[test]
    fn xi_below_one_rejected() {
        assert!(XiShape::new(0.9).is_err());
        assert!(XiShape::new(f64::INFINITY).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(rlb_complement(p(1.0 - INV_E)).value, 1.0);
        assert_relative_eq!(rlb_complement(p(0.95)).value, rlb(p(0.05)).value, max_relative = 1e-13);
        assert_eq!(rlb_complement(p(0.5)).value, 1.0);
        let one = rlb_complement(p(1.0));
        assert_eq!(one.value, 0.0);
        assert_eq!(one.degenerate, Some(Degeneracy::PValueOne));
    }

    #[test]
    fn invert_examples() {
        assert_relative_eq!(invert_rlb(p(1.0), 1.0).unwrap().get(), INV_E, max_relative = 1e-15);
        let b = rlb(p(0.05)).value;
        assert_relative_eq!(invert_rlb(p(b), 1.0).unwrap().get(), 0.05, max_relative = 1e-12);
        let b2 = rlb_xi(p(0.05), xi(2.0)).value;
        assert_relative_eq!(invert_rlb(p(b2), 2.0).unwrap().get(), 0.05, max_relative = 1e-12);
        assert!(invert_rlb(p(0.0), 1.0).is_err());
    }

    #[test]
    fn invert_above_supremum_rejected() {
        // For ξ = 2 the formula never exceeds 2/e below 1/e.
        assert!(invert_rlb(p(0.9), 2.0).is_err());
        assert_relative_eq!(bound_supremum(2.0), 2.0 / E, max_relative = 1e-15);
    }

    #[test]
    fn invert_alternative_family_shape() {
        // ξ = 0.5: increasing branch ends at e^{-2} where the formula equals 1.
        let rho = invert_rlb(p(0.3), 0.5).unwrap().get();
        assert!(rho < (-2.0f64).exp());
        assert_relative_eq!(bound_formula(rho, 0.5), 0.3, max_relative = 1e-12);
    }

    #[test]
    fn posterior_examples() {
        assert_eq!(posterior_from_bf(1.0, PriorOdds::EVEN).unwrap().get(), 0.5);
        assert_relative_eq!(
            posterior_from_bf(rlb(p(0.05)).value, PriorOdds::EVEN).unwrap().get(),
            0.289_349_885_461_101_6,
            max_relative = 1e-13
        );
        let odds = PriorOdds::new(0.25).unwrap();
        assert_relative_eq!(posterior_from_bf(3.0, odds).unwrap().get(), 0.5, max_relative = 1e-15);
        assert!(posterior_from_bf(0.0, odds).is_err());
    }

    proptest! {
        #[test]
        fn lemma_inequality(pv in 1e-300f64..INV_E, x in 1.0f64..20.0) {
            let b = rlb_xi(p(pv), xi(x)).value;
            let floor = E * x * pv.powf(x);
            prop_assert!(b >= floor);
            prop_assert!(floor > pv.powf(x) || pv.powf(x) == 0.0);
        }

        #[test]
        fn pseudo_bound_is_smaller(pv in 1e-12f64..0.3678, x in 1.0001f64..5.0) {
            prop_assert!(rlb(p(pv)).value > rlb_xi(p(pv), xi(x)).value);
        }

        #[test]
        fn bound_in_unit_interval(pv in 0.0f64..=1.0, x in 1.0f64..50.0) {
            let b = rlb_xi(p(pv), xi(x)).value;
            prop_assert!((0.0..=1.0).contains(&b));
        }

        #[test]
        fn round_trip(pv in 1e-8f64..0.36, x in 1.0f64..4.0) {
            let b = rlb_xi(p(pv), xi(x)).value;
            let back = invert_rlb(p(b), x).unwrap().get();
            prop_assert!((back - pv).abs() <= 1e-10, "{back} vs {pv}");
        }

        #[test]
        fn posterior_monotone(b1 in 1e-6f64..1e3, scale in 1.0001f64..10.0, pi0 in 0.01f64..0.99) {
            let odds = PriorOdds::new(pi0).unwrap();
            let lo = posterior_from_bf(b1, odds).unwrap().get();
            let hi = posterior_from_bf(b1 * scale, odds).unwrap().get();
            prop_assert!(hi > lo);
        }
    }

    #[test]
    fn round_trip_near_flat_top() {
        // For ξ = 1 the bound has zero slope at 1/e, so the inverse is only
        // sqrt(ε)-conditioned there.
        for &pv in &[0.361, 0.365, 0.3675, 0.36787] {
            let b = rlb(p(pv)).value;
            let back = invert_rlb(p(b), 1.0).unwrap().get();
            assert!((back - pv).abs() <= 1e-7, "{back} vs {pv}");
        }
    }

    #[test]
    fn posterior_half_iff_bf_equals_ratio() {
        for &pi0 in &[0.1, 0.25, 0.5, 0.8] {
            let odds = PriorOdds::new(pi0).unwrap();
            let post = posterior_from_bf(odds.alternative_ratio(), odds).unwrap().get();
            assert_relative_eq!(post, 0.5, max_relative = 1e-15);
        }
    }
}
