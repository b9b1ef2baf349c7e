//! Parameter sweeps over the `dicke-core` solvers.
//!
//! A sweep is described by a JSON config (see [`config`]), expanded into a
//! Cartesian grid in a fixed order, evaluated in parallel, and written as CSV
//! or JSON lines with one row per grid point. Output bytes do not depend on
//! the number of worker threads.

pub mod config;
pub mod convergence;
pub mod error;
pub mod output;
pub mod record;
pub mod run;

pub use config::{load_config, parse_config, Format, Mode, SweepConfig};
pub use convergence::{convergence_report, ConvergenceReport};
pub use error::{Result, SweepError};
pub use run::{run_sweep, SweepSummary};
