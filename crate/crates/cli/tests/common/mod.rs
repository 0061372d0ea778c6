use std::path::PathBuf;

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

/// Commands whose full JSON output is pinned. Regenerate with
/// `PCALIB_UPDATE_GOLDEN=1 cargo test -p pcalib-cli --test cli`.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("calibrate_p05", &["calibrate", "--p", "0.05", "--xi0", "1"]),
    ("calibrate_p05_xi2", &["calibrate", "--p", "0.05", "--xi0", "2"]),
    ("calibrate_p5", &["calibrate", "--p", "0.5"]),
    ("bf_bic", &["bf", "bic", "--alpha", "0.05", "--n", "100"]),
    ("bf_bic_xi", &["bf", "bic", "--alpha", "0.01", "--q", "3", "--n", "250", "--c", "0.5", "--xi0", "1.3"]),
    ("bf_pbic", &["bf", "pbic", "--alpha", "0.05", "--n", "82", "--j", "3", "--b", "100"]),
    ("bf_anova", &["bf", "anova", "--k", "3", "--r", "10"]),
    ("bf_ttest", &["bf", "ttest", "--t", "2", "--n", "50"]),
    ("bf_fisher", &["bf", "fisher", "--s1", "3", "--s2", "1", "--n1", "5", "--n2", "5"]),
    ("fisher_p", &["fisher-p", "--s1", "1", "--s2", "1", "--n1", "2", "--n2", "2"]),
    ("adaptive_two_prop", &["adaptive-alpha", "two-prop", "--n1", "10", "--n2", "10", "--sigma1-sq", "0.25", "--sigma2-sq", "0.25", "--p-hat-diff", "0.2", "--alpha", "0.5"]),
    ("adaptive_anova", &["adaptive-alpha", "anova", "--k", "3", "--r", "10"]),
    ("adaptive_linear", &["adaptive-alpha", "linear", "--q", "1", "--n", "82", "--j", "3", "--b", "100"]),
    ("adaptive_generic", &["adaptive-alpha", "generic", "--q", "1", "--n", "100", "--strategy", "bic", "--c-alpha", "1"]),
    ("scenario_findley", &["scenario", "findley"]),
    ("scenario_fig3", &["scenario", "fig3", "--points", "4"]),
    ("scenario_two_means", &["scenario", "two-means", "--points", "3"]),
    ("validate_rlb", &["validate", "rlb", "--xi", "1", "--samples", "100000", "--seed", "7"]),
    ("validate_fisher", &["validate", "fisher", "--n1", "2", "--n2", "1", "--p-grid", "0.5"]),
    ("validate_xi0", &["validate", "xi0", "--samples", "20000", "--seed", "3"]),
];

