use crate::check::check_against_paper;
use crate::config::{SweepConfig, DEFAULT_MAX_DOFS};
use crate::csv_io::{read_csv, write_csv};
use crate::error::{ReportError, Result};
use crate::plot::{render_plot, PlotPoint};
use crate::reference::PaperReference;
use crate::sweep::{run_sweep, SweepOutcome};
use clap::{Args, Parser, Subcommand};
use infsup_core::{Mode, RankTolerance};
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_CSV: &str = "infsup_sweep.csv";
const DEFAULT_SVG: &str = "infsup.svg";

/// Discrete inf-sup constant of (p, div u) on square spectral element meshes.
#[derive(Debug, Parser)]
#[command(name = "infsup", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute beta_h over the (L, N, K) grid and write a CSV.
    Sweep(SweepArgs),
    /// Compute the kperp sweep and compare it with the reference tables.
    Check(SweepArgs),
    /// Render beta_h against h as an SVG, from a fresh sweep or an existing CSV.
    Plot {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Read results from this CSV instead of computing them.
        #[arg(long)]
        from: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct SweepArgs {
    /// Domain edge lengths L (comma separated); the domain is [0, L]^2.
    #[arg(long = "L", value_delimiter = ',', default_values_t = [1.0, 2.0])]
    pub lengths: Vec<f64>,

    /// Polynomial degrees N (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
    pub degrees: Vec<usize>,

    /// Elements per direction K, strictly ascending (comma separated); h = 1/K.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 8, 16, 32, 64])]
    pub refinements: Vec<usize>,

    /// Velocity norm: kperp (|| div u ||) or hdiv (full H(div) norm).
    #[arg(long, default_value = "kperp", value_parser = parse_mode)]
    pub mode: Mode,

    /// Results CSV path (sweep default: infsup_sweep.csv).
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// SVG plot path (plot default: infsup.svg).
    #[arg(long)]
    pub plot_out: Option<PathBuf>,

    /// Rank cutoff factor c in tau = dim * eps * c * (largest eigen/singular value).
    #[arg(long, default_value_t = RankTolerance::DEFAULT_FACTOR)]
    pub rank_tol_factor: f64,

    /// Skip cases with more flux DOFs than this.
    #[arg(long, default_value_t = DEFAULT_MAX_DOFS)]
    pub max_dofs: usize,

    /// Also evaluate beta_h through the independent eigenvalue oracle and report the difference.
    #[arg(long)]
    pub oracle: bool,

    /// Number of cases computed concurrently.
    #[arg(long, env = "INFSUP_JOBS", default_value_t = 1)]
    pub jobs: usize,

    /// Fill the CSV elapsed_ms column (makes the CSV run-dependent).
    #[arg(long)]
    pub timings: bool,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse::<Mode>().map_err(|e| e.to_string())
}

impl SweepArgs {
    pub fn to_config(&self) -> SweepConfig {
        SweepConfig {
            lengths: self.lengths.clone(),
            degrees: self.degrees.clone(),
            refinements: self.refinements.clone(),
            mode: self.mode,
            rank_tol_factor: self.rank_tol_factor,
            max_dofs: self.max_dofs,
            csv_out: self.out.clone(),
            plot_out: self.plot_out.clone(),
            oracle: self.oracle,
            jobs: self.jobs,
            timings: self.timings,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                ReportError::Config(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn sweep_checked(config: &SweepConfig) -> Result<SweepOutcome> {
    let outcome = run_sweep(config)?;
    if outcome.results.is_empty() {
        return Err(ReportError::Validation(format!(
            "no case was computed ({} skipped or failed)",
            outcome.skipped.len()
        )));
    }
    for s in &outcome.skipped {
        eprintln!(
            "skipped L={} N={} K={} (n_u = {}): {}",
            s.case.length, s.case.degree, s.case.elements, s.n_u, s.reason
        );
    }
    Ok(outcome)
}

fn write_outputs(config: &SweepConfig, outcome: &SweepOutcome, csv_default: Option<&str>) -> Result<()> {
    if let Some(path) = config.csv_out.clone().or_else(|| csv_default.map(PathBuf::from)) {
        write_csv(&outcome.results, &outcome.skipped, &path, config.timings)?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = &config.plot_out {
        let points: Vec<PlotPoint> = outcome.results.iter().map(PlotPoint::from).collect();
        render_plot(&points, path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn print_results(outcome: &SweepOutcome) {
    println!(
        "{:>4} {:>2} {:>4} {:>6} {:>18} {:>7} {:>7} {:>13}",
        "L", "N", "K", "mode", "beta_h", "n_u", "rank_E", "oracle diff"
    );
    for r in &outcome.results {
        let oracle = r
            .oracle_beta
            .map(|o| format!("{:.3e}", (o - r.beta_h).abs()))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:>4} {:>2} {:>4} {:>6} {:>18.15} {:>7} {:>7} {:>13}",
            r.case.length, r.case.degree, r.case.elements, r.mode, r.beta_h, r.n_u, r.rank_e, oracle
        );
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Sweep(args) => {
            let config = args.to_config();
            let outcome = sweep_checked(&config)?;
            print_results(&outcome);
            write_outputs(&config, &outcome, Some(DEFAULT_CSV))?;
            Ok(EXIT_OK)
        }
        Command::Check(args) => {
            let config = args.to_config();
            if config.mode != Mode::Kperp {
                return Err(ReportError::Config(
                    "check compares against kperp values; drop --mode or use --mode kperp".into(),
                ));
            }
            let outcome = sweep_checked(&config)?;
            write_outputs(&config, &outcome, None)?;
            let report = check_against_paper(&outcome.results, &PaperReference)?;
            println!("{report}");
            if report.rows.is_empty() {
                eprintln!("no computed case matches a tabulated cell");
                return Ok(EXIT_FAILURE);
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Plot { sweep, from } => {
            let mut config = sweep.to_config();
            let target = config
                .plot_out
                .get_or_insert_with(|| PathBuf::from(DEFAULT_SVG))
                .clone();
            match from {
                Some(csv) => {
                    let points = read_csv(&csv)?;
                    render_plot(&points, &target)?;
                    println!("wrote {}", target.display());
                }
                None => {
                    let outcome = sweep_checked(&config)?;
                    write_outputs(&config, &outcome, None)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}
