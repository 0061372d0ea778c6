//! CDFs and quantiles of the reference distributions used by the formulas:
//! chi-square, Fisher F and Student t.

use super::beta::regularized_beta;
use super::gamma::regularized_gamma;
use super::solve::solve_monotone;
use super::{Probability, Tail};
use crate::{Error, Result};

fn check_dof(name: &str, dof: f64) -> Result<()> {
    if !(dof > 0.0) || !dof.is_finite() {
        return Err(Error::DegreesOfFreedom(format!("{name} must be finite and > 0, got {dof}")));
    }
    Ok(())
}

fn check_open_level(level: Probability) -> Result<f64> {
    let a = level.get();
    if a <= 0.0 || a >= 1.0 {
        return Err(Error::domain(format!("quantile level must lie in (0, 1), got {a}")));
    }
    Ok(a)
}

/// `P(X <= x)` for `X ~ χ²(dof)`.
pub fn chi2_cdf(x: f64, dof: f64) -> Result<f64> {
    check_dof("chi-square dof", dof)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok(regularized_gamma(0.5 * dof, 0.5 * x)?.0)
}

/// `P(X > x)` for `X ~ χ²(dof)`.
pub fn chi2_sf(x: f64, dof: f64) -> Result<f64> {
    check_dof("chi-square dof", dof)?;
    if x <= 0.0 {
        return Ok(1.0);
    }
    Ok(regularized_gamma(0.5 * dof, 0.5 * x)?.1)
}

/// Chi-square critical value.
///
/// With [`Tail::Upper`] returns `x` such that `P(X > x) = alpha` (the
/// rejection-region reading used throughout the crate); with
/// [`Tail::Lower`] returns the literal `alpha` quantile, `P(X <= x) = alpha`.
pub fn chi2_quantile(alpha: Probability, dof: f64, tail: Tail) -> Result<f64> {
    let a = check_open_level(alpha)?;
    check_dof("chi-square dof", dof)?;
    // Solve in whichever tail is being matched so small levels keep full
    // relative accuracy.
    let (tail_fn, target): (Box<dyn Fn(f64) -> f64>, f64) = match tail {
        Tail::Upper => (Box::new(move |x| chi2_sf(x, dof).unwrap_or(f64::NAN)), a),
        Tail::Lower => (Box::new(move |x| chi2_cdf(x, dof).unwrap_or(f64::NAN)), a),
    };
    let mut hi = dof.max(1.0) * 2.0 + 10.0;
    loop {
        let v = tail_fn(hi);
        let beyond = match tail {
            Tail::Upper => v < a,
            Tail::Lower => v > a,
        };
        if beyond {
            break;
        }
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Convergence("chi-square quantile bracket"));
        }
    }
    solve_monotone(tail_fn, 0.0, hi, target, 0.0)
}

/// `P(F > f)` for `F ~ F(d1, d2)`.
pub fn f_sf(f: f64, d1: f64, d2: f64) -> Result<f64> {
    check_dof("F numerator dof", d1)?;
    check_dof("F denominator dof", d2)?;
    if f <= 0.0 {
        return Ok(1.0);
    }
    regularized_beta(d2 / (d2 + d1 * f), 0.5 * d2, 0.5 * d1)
}

/// Upper critical value `F_alpha(d1, d2)`: `P(F > x) = alpha`.
pub fn f_quantile_upper(alpha: Probability, d1: f64, d2: f64) -> Result<f64> {
    let a = check_open_level(alpha)?;
    check_dof("F numerator dof", d1)?;
    check_dof("F denominator dof", d2)?;
    let sf = |x: f64| f_sf(x, d1, d2).unwrap_or(f64::NAN);
    let mut hi = 10.0;
    while sf(hi) >= a {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Convergence("F quantile bracket"));
        }
    }
    solve_monotone(sf, 0.0, hi, a, 0.0)
}

/// Two-sided tail probability `P(|T| > t)` for Student t with `dof` degrees of freedom.
pub fn t_two_sided_sf(t: f64, dof: f64) -> Result<f64> {
    check_dof("t dof", dof)?;
    let t2 = t * t;
    if t2 == 0.0 {
        return Ok(1.0);
    }
    regularized_beta(dof / (dof + t2), 0.5 * dof, 0.5)
}

/// `t >= 0` with `P(|T| > t) = p`.
pub fn t_two_sided_quantile(p: Probability, dof: f64) -> Result<f64> {
    let a = check_open_level(p)?;
    check_dof("t dof", dof)?;
    let sf = |t: f64| t_two_sided_sf(t, dof).unwrap_or(f64::NAN);
    let mut hi = 10.0;
    while sf(hi) >= a {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Convergence("t quantile bracket"));
        }
    }
    solve_monotone(sf, 0.0, hi, a, 0.0)
}
