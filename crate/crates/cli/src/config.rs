use crate::error::{ReportError, Result};
use infsup_core::{InfSupCase, Mode, RankTolerance};
use std::path::PathBuf;

pub const DEFAULT_LENGTHS: [f64; 2] = [1.0, 2.0];
pub const DEFAULT_DEGREES: [usize; 3] = [1, 2, 3];
pub const DEFAULT_REFINEMENTS: [usize; 6] = [2, 4, 8, 16, 32, 64];
pub const DEFAULT_MAX_DOFS: usize = 10_000;

/// Parameters of a `(L, N, K)` sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub lengths: Vec<f64>,
    pub degrees: Vec<usize>,
    /// Elements per direction, strictly ascending.
    pub refinements: Vec<usize>,
    pub mode: Mode,
    pub rank_tol_factor: f64,
    /// Cases with more flux DOFs than this are skipped.
    pub max_dofs: usize,
    pub csv_out: Option<PathBuf>,
    pub plot_out: Option<PathBuf>,
    pub oracle: bool,
    pub jobs: usize,
    /// Record wall-clock time in the CSV `elapsed_ms` column.
    pub timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            lengths: DEFAULT_LENGTHS.to_vec(),
            degrees: DEFAULT_DEGREES.to_vec(),
            refinements: DEFAULT_REFINEMENTS.to_vec(),
            mode: Mode::Kperp,
            rank_tol_factor: RankTolerance::DEFAULT_FACTOR,
            max_dofs: DEFAULT_MAX_DOFS,
            csv_out: None,
            plot_out: None,
            oracle: false,
            jobs: 1,
            timings: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(ReportError::Config(m.to_string()));
        if self.lengths.is_empty() {
            return fail("the list of domain sizes is empty");
        }
        if self.degrees.is_empty() {
            return fail("the list of polynomial degrees is empty");
        }
        if self.refinements.is_empty() {
            return fail("the list of refinements is empty");
        }
        if self.lengths.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
            return fail("domain sizes must be positive");
        }
        if self.degrees.contains(&0) {
            return fail("polynomial degrees must be at least 1");
        }
        if self.refinements.contains(&0) {
            return fail("refinements must be at least 1");
        }
        if self.refinements.windows(2).any(|w| w[0] >= w[1]) {
            return fail("refinements must be strictly ascending");
        }
        if self.max_dofs == 0 {
            return fail("max-dofs must be positive");
        }
        if self.jobs == 0 {
            return fail("jobs must be at least 1");
        }
        RankTolerance::new(self.rank_tol_factor)
            .map_err(|e| ReportError::Config(e.to_string()))?;
        Ok(())
    }

    pub fn rank_tol(&self) -> RankTolerance {
        RankTolerance {
            factor: self.rank_tol_factor,
        }
    }

    /// All cases in `(L, N, K)` order.
    pub fn cases(&self) -> Vec<InfSupCase> {
        let mut lengths = self.lengths.clone();
        lengths.sort_by(f64::total_cmp);
        lengths.dedup();
        let mut degrees = self.degrees.clone();
        degrees.sort_unstable();
        degrees.dedup();
        let mut out = Vec::new();
        for &l in &lengths {
            for &n in &degrees {
                for &k in &self.refinements {
                    out.push(InfSupCase::new(l, n, k));
                }
            }
        }
        out
    }
}
