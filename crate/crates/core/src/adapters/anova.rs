use nalgebra::DMatrix;

/// `|X_kᵗX_k| / |X_1ᵗX_1| = k⁻¹ r^{k-1}` for `k` groups of `r` replicates.
pub fn anova_design_ratio(k: u32, r: u32) -> f64 {
    f64::from(r).powi(k as i32 - 1) / f64::from(k)
}

/// The same ratio from explicit design matrices: an intercept column for
/// the null model and one indicator column per group for the alternative.
pub fn anova_design_ratio_explicit(k: u32, r: u32) -> f64 {
    let (k, r) = (k as usize, r as usize);
    let n = k * r;
    let full = DMatrix::from_fn(n, k, |row, col| if row / r == col { 1.0 } else { 0.0 });
    let ones = DMatrix::from_element(n, 1, 1.0);
    (full.transpose() * &full).determinant() / (ones.transpose() * &ones).determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn examples() {
        assert_eq!(anova_design_ratio(1, 7), 1.0);
        assert_eq!(anova_design_ratio(2, 10), 5.0);
        assert_relative_eq!(anova_design_ratio(3, 4), 16.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(anova_design_ratio_explicit(2, 10), 5.0, max_relative = 1e-12);
        assert_relative_eq!(anova_design_ratio_explicit(3, 4), 16.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn formula_matches_determinants() {
        for k in 1..=5 {
            for r in 1..=10 {
                assert_relative_eq!(
                    anova_design_ratio(k, r),
                    anova_design_ratio_explicit(k, r),
                    max_relative = 1e-10
                );
            }
        }
    }
}
