//! Experiment harness for the watchnet simulator: config files, CSV
//! formats, replicated sweeps and the figure presets. The `watchnet` binary
//! is a thin CLI over this library.

pub mod config;
pub mod csvio;
pub mod experiment;
pub mod figures;

pub use config::{load_config, parse_config, ParsedConfig};
pub use experiment::{run_sweep, ExperimentSpec, SweepAxis, SweepResult};
