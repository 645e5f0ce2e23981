//! Sweep runner and reporting for the discrete inf-sup constant: CSV tables,
//! SVG plots and a comparison against the reference tables.

pub mod check;
pub mod cli;
pub mod config;
pub mod csv_io;
pub mod error;
pub mod plot;
pub mod reference;
pub mod sweep;

pub use check::{check_against_paper, CheckReport, CheckRow, CHECK_TOL};
pub use cli::cli_main;
pub use config::SweepConfig;
pub use csv_io::{format_significant, read_csv, results_csv, write_csv, CSV_HEADER};
pub use error::{ReportError, Result};
pub use plot::{render_plot, render_svg, zoom_range, PlotPoint};
pub use reference::{PaperReference, ReferenceValue};
pub use sweep::{run_sweep, SkippedCase, SweepOutcome};
