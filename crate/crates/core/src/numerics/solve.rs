use crate::{Error, Result};

/// Default function-space tolerance for [`solve_monotone`].
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_ITER: usize = 4_000;

/// Finds `x` in `[lo, hi]` with `|f(x) - target| <= tol` for a continuous,
/// strictly monotone `f`.
///
/// Illinois-modified regula falsi with a forced bisection whenever two steps
/// fail to halve the bracket. If the bracket collapses to adjacent floats
/// before `tol` is met, the endpoint with the smaller residual is returned,
/// so the call always terminates.
pub fn solve_monotone<F>(f: F, lo: f64, hi: f64, target: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    let f_lo = f(lo);
    let f_hi = f(hi);
    let (min, max) = if f_lo <= f_hi { (f_lo, f_hi) } else { (f_hi, f_lo) };
    if !(target >= min - tol && target <= max + tol) {
        return Err(Error::Bracket { target, f_lo, f_hi });
    }

    let (mut a, mut b) = (lo, hi);
    let (mut ga, mut gb) = (f_lo - target, f_hi - target);
    if ga.abs() <= tol {
        return Ok(a);
    }
    if gb.abs() <= tol {
        return Ok(b);
    }

    let mut last_side = 0i8;
    let mut width_two_steps_ago = b - a;
    let mut bisect = false;
    for iter in 0..MAX_ITER {
        let mut c = if bisect { a + 0.5 * (b - a) } else { (a * gb - b * ga) / (gb - ga) };
        if !(c > a && c < b) {
            c = a + 0.5 * (b - a);
        }
        if !(c > a && c < b) {
            break;
        }
        let gc = f(c) - target;
        if gc.abs() <= tol {
            return Ok(c);
        }
        if (gc < 0.0) == (ga < 0.0) {
            a = c;
            ga = gc;
            if last_side == -1 {
                gb *= 0.5;
            }
            last_side = -1;
        } else {
            b = c;
            gb = gc;
            if last_side == 1 {
                ga *= 0.5;
            }
            last_side = 1;
        }
        if iter % 2 == 1 {
            bisect = (b - a) > 0.5 * width_two_steps_ago;
            width_two_steps_ago = b - a;
        } else {
            bisect = false;
        }
    }
    // Bracket collapsed; report the better endpoint using unscaled residuals.
    if (f(a) - target).abs() <= (f(b) - target).abs() {
        Ok(a)
    } else {
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::E;

    #[test]
    fn identity() {
        let x = solve_monotone(|x| x, 0.0, 1.0, 0.3, DEFAULT_TOL).unwrap();
        assert!((x - 0.3).abs() <= 1e-12);
    }

    #[test]
    fn square_root_of_two() {
        let x = solve_monotone(|x| x * x, 0.0, 2.0, 2.0, DEFAULT_TOL).unwrap();
        assert_relative_eq!(x, std::f64::consts::SQRT_2, max_relative = 1e-12);
    }

    #[test]
    fn inverts_rlb_shape() {
        let target = -E * 0.05 * 0.05f64.ln();
        let x = solve_monotone(|x| -E * x * x.ln(), 1e-12, 1.0 / E, target, DEFAULT_TOL).unwrap();
        assert_relative_eq!(x, 0.05, max_relative = 1e-10);
    }

    #[test]
    fn decreasing_functions() {
        let x = solve_monotone(|x| (-x).exp(), 0.0, 50.0, 1e-6, 1e-18).unwrap();
        assert_relative_eq!(x, 1e6f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn target_outside_bracket() {
        let err = solve_monotone(|x| x, 0.0, 1.0, 2.0, DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn zero_tolerance_terminates() {
        let x = solve_monotone(|x| x.powi(3), -1.0, 3.0, 2.0, 0.0).unwrap();
        assert_relative_eq!(x, 2f64.cbrt(), max_relative = 1e-15);
    }
}
