use super::gamma::ln_gamma_unchecked;
use crate::{Error, Result};

const MAX_ITER: usize = 10_000;

fn check_shape(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!(
            "beta function requires finite a > 0 and b > 0, got a={a}, b={b}"
        )));
    }
    Ok(())
}

/// `ln B(a, b) = lnΓ(a) + lnΓ(b) - lnΓ(a + b)`.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    check_shape(a, b)?;
    Ok(ln_beta_unchecked(a, b))
}

pub(crate) fn ln_beta_unchecked(a: f64, b: f64) -> f64 {
    // Summing the two smaller logs first keeps B(a, b) and B(b, a) bit-identical.
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    ln_gamma_unchecked(lo) + ln_gamma_unchecked(hi) - ln_gamma_unchecked(lo + hi)
}

/// The complete beta function `B(a, b)`.
pub fn beta_function(a: f64, b: f64) -> Result<f64> {
    Ok(ln_beta(a, b)?.exp())
}

/// Regularized incomplete beta `I_x(a, b)` for `0 <= x <= 1`.
pub fn regularized_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    check_shape(a, b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("incomplete beta requires 0 <= x <= 1, got {x}")));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(x);
    }
    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta_unchecked(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(ln_front.exp() * beta_continued_fraction(x, a, b)? / a)
    } else {
        Ok(1.0 - ln_front.exp() * beta_continued_fraction(1.0 - x, b, a)? / b)
    }
}

fn beta_continued_fraction(x: f64, a: f64, b: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            return Ok(h);
        }
    }
    Err(Error::Convergence("incomplete beta continued fraction"))
}
