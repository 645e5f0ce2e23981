use crate::config::SweepConfig;
use crate::error::{ReportError, Result};
use infsup_core::faer::{self, Par};
use infsup_core::{compute_infsup, InfSupCase, InfSupOptions, InfSupResult, Mode};
use log::{info, warn};
use rayon::prelude::*;

/// A case that was not computed.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCase {
    pub case: InfSupCase,
    pub mode: Mode,
    pub n_u: usize,
    pub n_p: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    /// Computed cases in `(L, N, K)` order.
    pub results: Vec<InfSupResult>,
    /// Cases over the DOF guard or that failed, in `(L, N, K)` order.
    pub skipped: Vec<SkippedCase>,
}

enum CaseOutcome {
    Done(InfSupResult),
    Skipped(SkippedCase),
}

/// Runs every `(L, N, K)` case of `config` on a pool of `config.jobs` workers.
///
/// A failing case is recorded in `skipped` and does not abort the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    // Each case runs its dense kernels sequentially so results do not depend on scheduling.
    faer::set_global_parallelism(Par::Seq);
    let opts = InfSupOptions {
        mode: config.mode,
        rank_tol: config.rank_tol(),
        oracle: config.oracle,
    };
    let cases = config.cases();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| ReportError::Config(format!("cannot start worker pool: {e}")))?;

    let outcomes: Vec<CaseOutcome> = pool.install(|| {
        cases
            .par_iter()
            .map(|case| run_case(case, &opts, config.max_dofs))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut out = SweepOutcome::default();
    for o in outcomes {
        match o {
            CaseOutcome::Done(r) => out.results.push(r),
            CaseOutcome::Skipped(s) => out.skipped.push(s),
        }
    }
    // par_iter().collect() preserves input order, which is already (L, N, K).
    Ok(out)
}

fn run_case(case: &InfSupCase, opts: &InfSupOptions, max_dofs: usize) -> Result<CaseOutcome> {
    let layout = case.layout()?;
    let (n_u, n_p) = (layout.n_flux(), layout.n_pressure());
    let skipped = |reason: String| {
        CaseOutcome::Skipped(SkippedCase {
            case: *case,
            mode: opts.mode,
            n_u,
            n_p,
            reason,
        })
    };
    if n_u > max_dofs {
        info!(
            "skip L={} N={} K={}: n_u = {n_u} exceeds {max_dofs}",
            case.length, case.degree, case.elements
        );
        return Ok(skipped("dof-guard".to_string()));
    }
    match compute_infsup(case, opts) {
        Ok(r) => {
            info!(
                "L={} N={} K={} n_u={} beta_h={:.15} ({:.0} ms)",
                case.length, case.degree, case.elements, n_u, r.beta_h, r.elapsed_ms
            );
            Ok(CaseOutcome::Done(r))
        }
        Err(e) => {
            warn!(
                "L={} N={} K={} failed: {e}",
                case.length, case.degree, case.elements
            );
            Ok(skipped(format!("error: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_skips_large_cases() {
        let c = SweepConfig {
            lengths: vec![1.0],
            degrees: vec![1, 2],
            refinements: vec![1, 2, 4],
            max_dofs: 40,
            ..Default::default()
        };
        let out = run_sweep(&c).unwrap();
        // n_u: N=1 → 4, 12, 40; N=2 → 12, 40, 144
        assert_eq!(out.results.len(), 5);
        assert_eq!(out.skipped.len(), 1);
        assert_eq!(out.skipped[0].n_u, 144);
        assert_eq!(out.skipped[0].reason, "dof-guard");
        assert!(out.results.iter().all(|r| r.n_u <= 40));
    }

    #[test]
    fn empty_refinements_is_config_error() {
        let c = SweepConfig {
            refinements: vec![],
            ..Default::default()
        };
        assert!(matches!(run_sweep(&c), Err(ReportError::Config(_))));
    }
}
