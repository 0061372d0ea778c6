use crate::numerics::{ln_gamma_unchecked, Probability};
use crate::{Error, Result};

fn ln_choose(n: u32, k: u32) -> f64 {
    ln_gamma_unchecked(f64::from(n) + 1.0)
        - ln_gamma_unchecked(f64::from(k) + 1.0)
        - ln_gamma_unchecked(f64::from(n - k) + 1.0)
}

fn ln_hypergeometric(j: u32, s: u32, n1: u32, n2: u32) -> f64 {
    ln_choose(n1, j) + ln_choose(n2, s - j) - ln_choose(n1 + n2, s)
}

/// `P(S₁ = j | S₁ + S₂ = s)` for independent `Bin(n₁, p)`, `Bin(n₂, p)`.
pub fn hypergeometric_pmf(j: u32, s: u32, n1: u32, n2: u32) -> f64 {
    if s > n1 + n2 || j > n1 || j > s || s - j > n2 {
        return 0.0;
    }
    ln_hypergeometric(j, s, n1, n2).exp()
}

/// Conditional (Fisher) pseudo p-value `Σ_{j=s₁}^{min(n₁, s)} f(j | s)`,
/// the upper hypergeometric tail given the total `s = s₁ + s₂`.
pub fn fisher_pseudo_p(s1: u32, s2: u32, n1: u32, n2: u32) -> Result<Probability> {
    if s1 > n1 || s2 > n2 {
        return Err(Error::domain(format!(
            "successes exceed group sizes: s1={s1}/{n1}, s2={s2}/{n2}"
        )));
    }
    let s = s1 + s2;
    let lowest = s.saturating_sub(n2);
    if s1 <= lowest {
        return Probability::new(1.0);
    }
    let top = n1.min(s);
    let logs: Vec<f64> = (s1..=top).map(|j| ln_hypergeometric(j, s, n1, n2)).collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|l| (l - max).exp()).sum();
    Probability::new((max + sum.ln()).exp().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn choose(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn examples() {
        for s2 in 0..=6 {
            assert_eq!(fisher_pseudo_p(0, s2, 4, 6).unwrap().get(), 1.0);
        }
        assert_relative_eq!(fisher_pseudo_p(2, 0, 2, 2).unwrap().get(), 1.0 / 6.0, max_relative = 1e-13);
        assert_relative_eq!(fisher_pseudo_p(1, 1, 2, 2).unwrap().get(), 5.0 / 6.0, max_relative = 1e-13);
    }

    #[test]
    fn matches_direct_enumeration() {
        for n1 in 1..=12u32 {
            for n2 in 1..=12u32 {
                for s1 in 0..=n1 {
                    for s2 in 0..=n2 {
                        let s = s1 + s2;
                        let total = choose(u64::from(n1 + n2), u64::from(s));
                        let tail: f64 = (s1..=n1.min(s))
                            .filter(|&j| s - j <= n2)
                            .map(|j| choose(u64::from(n1), u64::from(j)) * choose(u64::from(n2), u64::from(s - j)))
                            .sum();
                        let got = fisher_pseudo_p(s1, s2, n1, n2).unwrap().get();
                        assert_relative_eq!(got, tail / total, max_relative = 1e-11);
                    }
                }
            }
        }
    }

    #[test]
    fn pmf_sums_to_one() {
        let total: f64 = (0..=7).map(|j| hypergeometric_pmf(j, 7, 9, 5)).sum();
        assert_relative_eq!(total, 1.0, max_relative = 1e-13);
    }

    #[test]
    fn rejects_bad_counts() {
        assert!(fisher_pseudo_p(3, 0, 2, 2).is_err());
    }
}
