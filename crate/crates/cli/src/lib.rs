//! Experiment harness for the constraint-encoding benchmarks: config
//! parsing, sweep orchestration with resumable CSV output, quantile
//! aggregation and the cross-module verification suite.

pub mod config;
pub mod experiment;
pub mod verify;

pub use config::{Benchmark, Engine, ExperimentConfig};
pub use experiment::{run_experiment, CliError, ExperimentOutcome, ResultRow, SweepSummary};
pub use verify::run_verification;
