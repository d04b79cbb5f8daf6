//! Batch front-end for the dissipative-metrology numerics: run configuration,
//! scenario orchestration, dataset/manifest output, unit conversion.

// `!(x > 0.0)` guards double as NaN rejection; `x <= 0.0` would admit NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod manifest;
pub mod scenarios;
pub mod units;

pub use config::{ExperimentConfig, Grid, OutputFormat, Scenario};
pub use error::CliError;
pub use scenarios::{run, RunOutcome, ENVELOPE_WINDOW_FRACTION};
pub use units::{convert_units, ConvertedUnits};
