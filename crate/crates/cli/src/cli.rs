use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pcalib", version, about = "Calibrate p-values into Bayes factors and posterior probabilities")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Run batch loops on a single thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower-bound Bayes factor and posterior for an observed (pseudo) p-value.
    Calibrate(CalibrateArgs),
    /// Sample-size adaptive significance levels.
    #[command(subcommand)]
    AdaptiveAlpha(AdaptiveCmd),
    /// Calibrated and exact Bayes factors.
    #[command(subcommand)]
    Bf(BfCmd),
    /// Conditional pseudo p-value of the two-binomial comparison.
    FisherP(FisherPArgs),
    /// Tables for the worked designs.
    #[command(subcommand)]
    Scenario(ScenarioCmd),
    /// Monte Carlo and exact validity checks.
    #[command(subcommand)]
    Validate(ValidateCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailArg {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GArg {
    Chi2,
    FDeviance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnovaModeArg {
    Printed,
    StrictNested,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Bic,
    Pbic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleSizeArg {
    Raw,
    Tess,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Prior {
    /// Prior probability of the null hypothesis.
    #[arg(long, default_value_t = 0.5)]
    pub pi0: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SeedArg {
    #[arg(long, env = "PCALIB_SEED", default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub xi0: f64,
    /// Calibrate q = 1 - p instead of p.
    #[arg(long)]
    pub complement: bool,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Subcommand)]
pub enum AdaptiveCmd {
    /// Equality of two proportions, from counts or from summaries.
    TwoProp(TwoPropArgs),
    /// Balanced one-way ANOVA.
    Anova(AnovaArgs),
    /// Nested linear models.
    Linear(LinearArgs),
    /// BIC or PBIC-adjusted level for q parameters and sample size n.
    Generic(GenericArgs),
}

#[derive(Debug, Args)]
pub struct TwoPropArgs {
    #[arg(long)]
    pub n1: u32,
    #[arg(long)]
    pub n2: u32,
    #[arg(long, requires = "s2")]
    pub s1: Option<u32>,
    #[arg(long, requires = "s1")]
    pub s2: Option<u32>,
    #[arg(long, conflicts_with = "s1")]
    pub sigma1_sq: Option<f64>,
    #[arg(long, conflicts_with = "s1")]
    pub sigma2_sq: Option<f64>,
    #[arg(long, conflicts_with = "s1")]
    pub p_hat_diff: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = TailArg::Upper)]
    pub tail: TailArg,
}

#[derive(Debug, Args)]
pub struct AnovaArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t = GArg::Chi2)]
    pub g: GArg,
    #[arg(long, value_enum, default_value_t = AnovaModeArg::Printed)]
    pub mode: AnovaModeArg,
}

#[derive(Debug, Args)]
pub struct LinearArgs {
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: f64,
    #[arg(long)]
    pub j: u32,
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t = GArg::Chi2)]
    pub g: GArg,
    #[arg(long, value_enum, default_value_t = TailArg::Upper)]
    pub tail: TailArg,
}

#[derive(Debug, Args)]
pub struct GenericArgs {
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Constant of the BIC strategy; required with `--strategy bic`.
    #[arg(long)]
    pub c_alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Pbic)]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = TailArg::Upper)]
    pub tail: TailArg,
}

#[derive(Debug, Subcommand)]
pub enum BfCmd {
    /// BIC-structured calibrated Bayes factor.
    Bic(BfBicArgs),
    /// Nested linear model Bayes factor.
    Pbic(BfPbicArgs),
    /// Balanced one-way ANOVA Bayes factor.
    Anova(BfAnovaArgs),
    /// Two-sample t-test Bayes factor with a normal prior on the mean difference.
    Ttest(TtestArgs),
    /// Beta-binomial Bayes factor for a common success probability.
    Fisher(BfFisherArgs),
}

#[derive(Debug, Args)]
pub struct BfBicArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1)]
    pub q: u32,
    #[arg(long)]
    pub n: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub xi0: f64,
    #[arg(long, value_enum, default_value_t = TailArg::Upper)]
    pub tail: TailArg,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct BfPbicArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1)]
    pub q: u32,
    #[arg(long)]
    pub n: f64,
    #[arg(long)]
    pub j: u32,
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t = GArg::Chi2)]
    pub g: GArg,
    #[arg(long, value_enum, default_value_t = TailArg::Upper)]
    pub tail: TailArg,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct BfAnovaArgs {
    #[command(flatten)]
    pub design: AnovaArgs,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct TtestArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    /// Total sample size n1 + n2.
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 6.0)]
    pub tau0: f64,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct BfFisherArgs {
    #[arg(long)]
    pub s1: u32,
    #[arg(long)]
    pub s2: u32,
    #[arg(long)]
    pub n1: u32,
    #[arg(long)]
    pub n2: u32,
    /// Common success probability under the null.
    #[arg(long, default_value_t = 0.5)]
    pub p0: f64,
    /// Prior strength a + b of the Beta prior centred at p0.
    #[arg(long, default_value_t = 2.0)]
    pub strength: f64,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct FisherPArgs {
    #[arg(long)]
    pub s1: u32,
    #[arg(long)]
    pub s2: u32,
    #[arg(long)]
    pub n1: u32,
    #[arg(long)]
    pub n2: u32,
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCmd {
    /// Posterior lower-bound curves over p for several shapes.
    Fig3(Fig3Args),
    /// Two normal means: lower bound, calibrated, linear-model and t-test posteriors.
    TwoMeans(TwoMeansArgs),
    /// Two binomials: lower bound, calibrated and beta-binomial posteriors per outcome.
    Fisher(FisherScenarioArgs),
    /// Nested regression from a CSV file.
    Regression(RegressionArgs),
    /// Posterior curves for the harmonic-information regression.
    Findley(FindleyArgs),
}

#[derive(Debug, Args)]
pub struct Fig3Args {
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1.1, 1.2, 1.3])]
    pub xi0: Vec<f64>,
    /// Grid points on (0, 1/e).
    #[arg(long, default_value_t = 1000)]
    pub points: u32,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct TwoMeansArgs {
    /// Total sample sizes, split evenly between the groups.
    #[arg(long, value_delimiter = ',', default_values_t = [50u32, 100])]
    pub n: Vec<u32>,
    #[arg(long, default_value_t = 1.0)]
    pub sigma1_sq: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma2_sq: f64,
    #[arg(long, default_value_t = 6.0)]
    pub tau0: f64,
    /// Fix the estimate instead of deriving it from each level.
    #[arg(long, allow_hyphen_values = true)]
    pub beta_hat: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormArg::Max)]
    pub form: FormArg,
    #[arg(long, default_value_t = 0.001)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 0.1)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: u32,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct FisherScenarioArgs {
    /// Total sample sizes, split evenly between the groups.
    #[arg(long, value_delimiter = ',', default_values_t = [50u32, 100])]
    pub n: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1.5, 2.0])]
    pub xi0: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub p0: f64,
    #[arg(long, default_value_t = 2.0)]
    pub strength: f64,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct RegressionArgs {
    /// Numeric CSV with a header row.
    #[arg(long)]
    pub csv: PathBuf,
    /// Response column.
    #[arg(long)]
    pub response: String,
    /// Predictor of the smaller model (one column).
    #[arg(long, value_delimiter = ',', required = true)]
    pub null: Vec<String>,
    /// Predictors of the larger model: the null column plus one more.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alt: Vec<String>,
    /// Level at which the comparators are evaluated.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Known residual variance; defaults to the larger model's residual mean square.
    #[arg(long)]
    pub sigma_sq: Option<f64>,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Args)]
pub struct FindleyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [100u32, 1000, 10000])]
    pub n: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.01])]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true, conflicts_with = "simulate")]
    pub theta_hat: f64,
    /// Simulate data under the null instead of fixing the estimate.
    #[arg(long)]
    pub simulate: bool,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value_t = SampleSizeArg::Raw)]
    pub sample_size: SampleSizeArg,
    #[arg(long, value_enum, default_value_t = GArg::Chi2)]
    pub g: GArg,
    #[command(flatten)]
    pub prior: Prior,
}

#[derive(Debug, Subcommand)]
pub enum ValidateCmd {
    /// Monte Carlo validity of the lower bound under Beta(xi, 1) p-values.
    Rlb(ValidateRlbArgs),
    /// Exact validity of the conditional pseudo p-value.
    Fisher(ValidateFisherArgs),
    /// Fit the Beta(xi, 1) shape to a sample of pseudo p-values.
    Xi0(ValidateXi0Args),
}

#[derive(Debug, Args)]
pub struct ValidateRlbArgs {
    #[arg(long, default_value_t = 1.0)]
    pub xi: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.02, 0.05, 0.1, 0.2, 0.3])]
    pub alpha_grid: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ValidateFisherArgs {
    #[arg(long)]
    pub n1: u32,
    #[arg(long)]
    pub n2: u32,
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])]
    pub p_grid: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ValidateXi0Args {
    /// CSV file holding the sample; without it a Beta(xi, 1) sample is simulated.
    #[arg(long, requires = "column")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub column: Option<String>,
    #[arg(long, default_value_t = 2.0)]
    pub xi: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[command(flatten)]
    pub seed: SeedArg,
}
