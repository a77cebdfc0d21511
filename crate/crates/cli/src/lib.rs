//! Command-line front end for `qsd-core`: figure datasets as CSV, single
//! optimizations, Monte Carlo runs and the oracle verification suite.

pub mod cli;
pub mod config;
pub mod error;
pub mod figures;
pub mod params;
pub mod table;
pub mod verify;

pub use cli::{execute, run, Cli};
pub use config::{Command, FigureId, RunConfig};
pub use error::{CliError, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
pub use figures::{figure_table, FigureSettings};
pub use params::{parse_params, ParamError, ParamOverrides};
pub use table::{FigureRow, FigureTable, TableError};
pub use verify::{run_checks, Check, VerifyOptions};
