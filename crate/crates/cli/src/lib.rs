//! Command-line front end for `fano-core`: JSON run configuration, parameter
//! presets, and CSV/SVG output for trajectories, steady states and sweeps.

pub mod args;
pub mod config;
pub mod csv;
pub mod error;
pub mod preset;
pub mod run;
pub mod svg;

pub use config::RunConfig;
pub use error::CliError;
pub use run::{run, Outcome};
