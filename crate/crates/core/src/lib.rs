//! Calibration of p-values and pseudo p-values into minimum Bayes factors,
//! information-adaptive significance levels and posterior probabilities of a
//! point null hypothesis.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: special functions, distribution quantiles and a bracketing
//!   root finder.
//! * [`calibration`]: the robust lower bound family `-e·ξ·p^ξ·ln p` and the
//!   map from a Bayes factor to a posterior probability.
//! * [`adaptive_alpha`]: sample-size adaptive significance levels (BIC and
//!   PBIC strategies).
//! * [`bayes_factors`]: Bayes factors obtained by evaluating the lower bound
//!   at an adaptive level, plus two exact comparators.
//! * [`adapters`]: scenario specific constants (effective sample sizes, PBIC
//!   corrections, design ratios, pseudo p-values).
//! * [`harness`]: seeded Monte Carlo and exact enumeration checks.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default); see [`exec::Execution`].

pub mod adapters;
pub mod adaptive_alpha;
pub mod bayes_factors;
pub mod calibration;
mod error;
pub mod exec;
pub mod harness;
pub mod numerics;

pub use error::{Degeneracy, Error, Flagged, Result};
pub use exec::Execution;
pub use numerics::{Probability, Tail};
