mod adaptive;
mod bayes;
mod calibrate;
mod scenario;
mod validate;

use pcalib::adaptive_alpha::{AnovaMode, GOption};
use pcalib::{Error, Execution, Probability, Tail};

use crate::cli::{AnovaModeArg, Cli, Command, GArg, TailArg};
use crate::output::Outcome;

#[derive(Debug)]
pub enum Failure {
    /// Inconsistent flags; exit status 2.
    Usage(String),
    /// Domain, data or I/O error; exit status 1.
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

pub type CmdResult = Result<Outcome, Failure>;

pub fn run(cli: &Cli) -> CmdResult {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match &cli.command {
        Command::Calibrate(args) => calibrate::calibrate(args),
        Command::AdaptiveAlpha(cmd) => adaptive::run(cmd),
        Command::Bf(cmd) => bayes::run(cmd),
        Command::FisherP(args) => bayes::fisher_p(args),
        Command::Scenario(cmd) => scenario::run(cmd, exec),
        Command::Validate(cmd) => validate::run(cmd, exec),
    }
}

pub(crate) fn prob(name: &str, value: f64) -> Result<Probability, Failure> {
    Probability::new(value).map_err(|_| Failure::Run(Error::Domain(format!("{name} must lie in [0, 1], got {value}"))))
}

impl From<TailArg> for Tail {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::Upper => Tail::Upper,
            TailArg::Lower => Tail::Lower,
        }
    }
}

impl From<GArg> for GOption {
    fn from(g: GArg) -> Self {
        match g {
            GArg::Chi2 => GOption::Chi2,
            GArg::FDeviance => GOption::FDeviance,
        }
    }
}

impl From<AnovaModeArg> for AnovaMode {
    fn from(m: AnovaModeArg) -> Self {
        match m {
            AnovaModeArg::Printed => AnovaMode::Printed,
            AnovaModeArg::StrictNested => AnovaMode::StrictNested,
        }
    }
}

pub(crate) fn tail_label(t: TailArg) -> &'static str {
    match t {
        TailArg::Upper => "upper",
        TailArg::Lower => "lower",
    }
}

pub(crate) fn mode_label(m: AnovaModeArg) -> &'static str {
    match m {
        AnovaModeArg::Printed => "printed",
        AnovaModeArg::StrictNested => "strict_nested",
    }
}
