//! Experiment harness for the data-driven solver: presets for the bar,
//! spring-bar and plate problems, a Newton reference solver for the plate,
//! configuration loading and report aggregation.

pub mod config;
pub mod experiments;
pub mod fem_ref;
pub mod plate;
pub mod presets;
pub mod report;

pub use config::{Experiment, RunConfig};
