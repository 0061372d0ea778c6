use std::cmp::Ordering;

use num_bigint::BigUint;
use rand_distr::{Binomial, Distribution};

use super::rng::{batch_rng, batches};
use super::{binomial_se, Method, ValidationPoint, ValidationResult};
use crate::adapters::fisher_pseudo_p;
use crate::{Error, Execution, Result};

/// Largest group size handled by exact enumeration.
pub const FISHER_ENUMERATION_LIMIT: u32 = 14;

/// Draws per success probability on the Monte Carlo path.
const MC_SAMPLES: u64 = 200_000;
const MC_SEED: u64 = 0x5eed_f15e;

fn binomial(n: u32, k: u32) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * u64::from(n - i) / u64::from(i + 1))
}

/// `p` as an exact decimal fraction `a / 10^k`, read from its shortest
/// round-trip representation.
fn decimal_fraction(p: f64) -> Result<(BigUint, BigUint)> {
    let text = format!("{p}");
    let (int_part, frac_part) = text.split_once('.').unwrap_or((&text, ""));
    let digits = format!("{int_part}{frac_part}");
    let num: BigUint = digits
        .parse()
        .map_err(|_| Error::domain(format!("cannot read {p} as a decimal fraction")))?;
    let den = BigUint::from(10u32).pow(frac_part.len() as u32);
    Ok((num, den))
}

struct Outcome {
    /// Pseudo p-value `tail / total`, both integers.
    tail: u64,
    total: u64,
    /// `C(n1,s1) C(n2,s2)`.
    multiplicity: u64,
    s: u32,
}

fn outcomes(n1: u32, n2: u32) -> Vec<Outcome> {
    let mut out = Vec::with_capacity(((n1 + 1) * (n2 + 1)) as usize);
    for s1 in 0..=n1 {
        for s2 in 0..=n2 {
            let s = s1 + s2;
            let top = n1.min(s);
            let tail = (s1..=top).map(|j| binomial(n1, j) * binomial(n2, s - j)).sum();
            out.push(Outcome {
                tail,
                total: binomial(n1 + n2, s),
                multiplicity: binomial(n1, s1) * binomial(n2, s2),
                s,
            });
        }
    }
    // Cross-multiplied comparison of the rational pseudo p-values.
    out.sort_by(|a, b| {
        (u128::from(a.tail) * u128::from(b.total)).cmp(&(u128::from(b.tail) * u128::from(a.total)))
    });
    out
}

fn same_level(a: &Outcome, b: &Outcome) -> bool {
    u128::from(a.tail) * u128::from(b.total) == u128::from(b.tail) * u128::from(a.total)
}

/// Exact check at one success probability: every achievable level `α`
/// satisfies `P(pseudo-p ≤ α) ≤ α`, compared as rationals.
fn exact_points(n1: u32, n2: u32, p: f64, table: &[Outcome]) -> Result<Vec<ValidationPoint>> {
    let (a, d) = decimal_fraction(p)?;
    let n = n1 + n2;
    let b = &d - &a;
    let pow_a: Vec<BigUint> = (0..=n).map(|k| a.pow(k)).collect();
    let pow_b: Vec<BigUint> = (0..=n).map(|k| b.pow(k)).collect();
    let denom = d.pow(n);

    let mut points = Vec::new();
    let mut cumulative = BigUint::ZERO;
    let mut i = 0;
    while i < table.len() {
        let mut j = i;
        while j < table.len() && same_level(&table[i], &table[j]) {
            let o = &table[j];
            cumulative += BigUint::from(o.multiplicity) * &pow_a[o.s as usize] * &pow_b[(n - o.s) as usize];
            j += 1;
        }
        let level = &table[i];
        // cumulative / denom <= tail / total
        let holds = &cumulative * BigUint::from(level.total) <= BigUint::from(level.tail) * &denom;
        let alpha = level.tail as f64 / level.total as f64;
        let probability = ratio_to_f64(&cumulative, &denom);
        points.push(ValidationPoint {
            parameter: Some(p),
            alpha,
            probability,
            std_error: 0.0,
            exact: Some(probability),
            matches_exact: None,
            margin: alpha - probability,
            holds,
        });
        i = j;
    }
    Ok(points)
}

fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.bits() == 0 {
        return 0.0;
    }
    // Scale so the integer quotient carries at least 64 significant bits.
    let shift = (den.bits() + 64).saturating_sub(num.bits());
    let q: BigUint = (num << shift) / den;
    let drop = q.bits().saturating_sub(64);
    let mantissa = (q >> drop).iter_u64_digits().next().unwrap_or(0) as f64;
    mantissa * 2f64.powi(drop as i32 - shift as i32)
}

fn monte_carlo_points(n1: u32, n2: u32, p: f64, index: u64, exec: Execution) -> Result<Vec<ValidationPoint>> {
    let b1 = Binomial::new(u64::from(n1), p).map_err(|e| Error::domain(e.to_string()))?;
    let b2 = Binomial::new(u64::from(n2), p).map_err(|e| Error::domain(e.to_string()))?;
    let mut levels: Vec<f64> = Vec::new();
    for s1 in 0..=n1 {
        for s2 in 0..=n2 {
            levels.push(fisher_pseudo_p(s1, s2, n1, n2)?.get());
        }
    }
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    levels.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    let tol = |x: f64| x * (1.0 + 1e-12);

    let per_batch = exec.map(batches(MC_SAMPLES), |(stream, count)| -> Result<Vec<u64>> {
        let mut rng = batch_rng(MC_SEED ^ index, stream);
        let mut hist = vec![0u64; levels.len()];
        for _ in 0..count {
            let s1 = b1.sample(&mut rng) as u32;
            let s2 = b2.sample(&mut rng) as u32;
            let pv = fisher_pseudo_p(s1, s2, n1, n2)?.get();
            let idx = levels.partition_point(|&l| tol(l) < pv);
            hist[idx.min(levels.len() - 1)] += 1;
        }
        Ok(hist)
    });
    let mut hist = vec![0u64; levels.len()];
    for h in per_batch {
        for (acc, v) in hist.iter_mut().zip(h?) {
            *acc += v;
        }
    }
    let mut cumulative = 0;
    Ok(levels
        .iter()
        .zip(hist)
        .map(|(&alpha, count)| {
            cumulative += count;
            let f = cumulative as f64 / MC_SAMPLES as f64;
            let se = binomial_se(f, MC_SAMPLES);
            ValidationPoint {
                parameter: Some(p),
                alpha,
                probability: f,
                std_error: se,
                exact: None,
                matches_exact: None,
                margin: alpha - f,
                holds: f <= alpha + 3.0 * se,
            }
        })
        .collect())
}

/// Validity of the conditional pseudo p-value under `p1 = p2 = p` for each
/// `p` in `p_grid`. Up to [`FISHER_ENUMERATION_LIMIT`] per group every
/// outcome is enumerated and the check is exact; larger groups fall back to
/// Monte Carlo with a warning.
pub fn verify_fisher_validity(n1: u32, n2: u32, p_grid: &[f64], exec: Execution) -> Result<ValidationResult> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::domain("group sizes must be >= 1"));
    }
    if p_grid.is_empty() || p_grid.iter().any(|&p| !(p > 0.0 && p < 1.0)) {
        return Err(Error::domain("success probabilities must lie in (0, 1)"));
    }
    let exact = n1 <= FISHER_ENUMERATION_LIMIT && n2 <= FISHER_ENUMERATION_LIMIT;
    let (method, warnings, groups) = if exact {
        let table = outcomes(n1, n2);
        let groups = exec.map(p_grid.to_vec(), |p| exact_points(n1, n2, p, &table));
        (Method::Exact, Vec::new(), groups)
    } else {
        let warning = format!(
            "group sizes ({n1}, {n2}) exceed the enumeration limit {FISHER_ENUMERATION_LIMIT}; \
             using {MC_SAMPLES} Monte Carlo draws per probability"
        );
        let groups = p_grid
            .iter()
            .enumerate()
            .map(|(i, &p)| monte_carlo_points(n1, n2, p, i as u64, exec))
            .collect();
        (Method::MonteCarlo, vec![warning], groups)
    };
    let mut points = Vec::new();
    for g in groups {
        points.extend(g?);
    }
    Ok(ValidationResult::from_points("fisher", method, points, warnings))
}

/// Exact validity over all group sizes `1..=max_n` squared.
pub fn verify_fisher_validity_grid(max_n: u32, p_grid: &[f64], exec: Execution) -> Result<ValidationResult> {
    let pairs: Vec<(u32, u32)> = (1..=max_n).flat_map(|a| (1..=max_n).map(move |b| (a, b))).collect();
    let results = exec.map(pairs, |(a, b)| verify_fisher_validity(a, b, p_grid, Execution::Sequential));
    let mut points = Vec::new();
    let mut warnings = Vec::new();
    let mut method = Method::Exact;
    for r in results {
        let r = r?;
        if r.method == Method::MonteCarlo {
            method = Method::MonteCarlo;
        }
        points.extend(r.points);
        warnings.extend(r.warnings);
    }
    Ok(ValidationResult::from_points("fisher", method, points, warnings))
}
