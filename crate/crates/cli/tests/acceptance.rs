//! Acceptance suite: one pass/fail line per criterion.
//!
//! The table sweeps use a flux-DOF guard of 5000 by default, which leaves out the
//! two cells per table with `n_u = 8320`. Set `INFSUP_ACCEPT_MAX_DOFS=10000` to
//! include them (several extra minutes per cell on a single core).

use infsup_cli::{check_against_paper, cli_main, run_sweep, CheckReport, PaperReference, SweepConfig};
use infsup_core::faer::{self, Mat, Par, Side};
use infsup_core::{
    beta_oracle, build_layout, build_test_matrix, compute_infsup, flux_mass_matrix, gll_rule,
    incidence_matrix, projector_defect, volume_mass_matrix, BasisSet1D, DofLayout, FluxField,
    InfSupCase, InfSupOptions, InfSupResult, Mode, RankTolerance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const TABLE_TOL: f64 = 1e-6;
const THEORY_LOWER: f64 = 1e-6;
const THEORY_UPPER: f64 = 1e-9;
const DOMAIN_TOL: f64 = 1e-6;
const PROJECTOR_TOL: f64 = 1e-8;
const PROJECTOR_BUDGET_S: f64 = 30.0;
const ORACLE_TOL: f64 = 1e-9;
const ORACLE_MAX_NU: usize = 2000;
const SYMMETRY_REL_TOL: f64 = 1e-14;
const COMMUTING_TOL: f64 = 1e-12;
const COMMUTING_TRIALS: usize = 20;
const EXACTNESS_TOL: f64 = 1e-12;
const KRONECKER_TOL: f64 = 1e-13;
const EDGE_DUALITY_TOL: f64 = 1e-12;
const CUTOFF_TOL: f64 = 1e-10;
const DEFAULT_GUARD: usize = 5000;

struct Outcome {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn guard() -> usize {
    std::env::var("INFSUP_ACCEPT_MAX_DOFS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

fn table_config(max_dofs: usize) -> SweepConfig {
    SweepConfig {
        max_dofs,
        ..Default::default()
    }
}

fn table_criterion(
    id: &'static str,
    title: &'static str,
    length: f64,
    report: &CheckReport,
    max_dofs: usize,
    elapsed_s: f64,
) -> Outcome {
    let rows: Vec<_> = report.rows.iter().filter(|r| r.length == length).collect();
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !(r.diff_reference <= TABLE_TOL && r.diff_one <= TABLE_TOL))
        .map(|r| format!("N={} K={} beta={}", r.degree, r.elements, r.computed))
        .collect();
    // Cells may only be missing because they are over the DOF guard.
    let mut unexplained = Vec::new();
    let mut guarded = Vec::new();
    for &(l, n, k) in report.missing.iter().filter(|m| m.0 == length) {
        let nu = build_layout(l, k, n).unwrap().n_flux();
        if nu > max_dofs {
            guarded.push(format!("N={n} K={k} (n_u={nu})"));
        } else {
            unexplained.push(format!("N={n} K={k}"));
        }
    }
    let worst = rows.iter().map(|r| r.diff_reference.max(r.diff_one)).fold(0.0, f64::max);
    Outcome {
        id,
        title,
        passed: !rows.is_empty() && failed.is_empty() && unexplained.is_empty(),
        detail: format!(
            "{} cells compared, worst deviation {worst:.3e}; over guard {max_dofs}: [{}]; failed: [{}]; missing: [{}]; sweep {elapsed_s:.1} s",
            rows.len(),
            guarded.join(", "),
            failed.join(", "),
            unexplained.join(", ")
        ),
    }
}

fn theory_criterion(results: &[InfSupResult]) -> Outcome {
    let extra = compute_infsup(&InfSupCase::new(3.0, 1, 2), &InfSupOptions::default()).unwrap();
    let all: Vec<&InfSupResult> = results.iter().chain(std::iter::once(&extra)).collect();
    let bad: Vec<String> = all
        .iter()
        .filter(|r| !(r.beta_h >= 1.0 - THEORY_LOWER && r.beta_h <= 1.0 + THEORY_UPPER))
        .map(|r| format!("L={} N={} K={}: {}", r.case.length, r.case.degree, r.case.elements, r.beta_h))
        .collect();
    let lo = all.iter().map(|r| r.beta_h).fold(f64::INFINITY, f64::min);
    let hi = all.iter().map(|r| r.beta_h).fold(f64::NEG_INFINITY, f64::max);
    Outcome {
        id: "3",
        title: "beta_h in [1 - 1e-6, 1 + 1e-9] for every kperp case",
        passed: bad.is_empty(),
        detail: format!("{} cases, beta_h in [{lo:.16}, {hi:.16}]; violations: [{}]", all.len(), bad.join(", ")),
    }
}

fn domain_criterion(results: &[InfSupResult]) -> Outcome {
    let mut pairs = 0;
    let mut worst = 0.0_f64;
    let mut bad = Vec::new();
    for a in results.iter().filter(|r| r.case.length == 1.0 && r.case.elements <= 16) {
        if let Some(b) = results.iter().find(|r| {
            r.case.length == 2.0 && r.case.degree == a.case.degree && r.case.elements == a.case.elements
        }) {
            pairs += 1;
            let d = (a.beta_h - b.beta_h).abs();
            worst = worst.max(d);
            if d > DOMAIN_TOL {
                bad.push(format!("N={} K={}", a.case.degree, a.case.elements));
            }
        }
    }
    let l3 = compute_infsup(&InfSupCase::new(3.0, 1, 2), &InfSupOptions::default())
        .unwrap()
        .beta_h;
    let l3_ok = l3 >= 1.0 - THEORY_LOWER && l3 <= 1.0 + THEORY_UPPER;
    Outcome {
        id: "4",
        title: "domain independence |beta(L=1) - beta(L=2)| <= 1e-6 (K <= 16), L=3 case",
        passed: pairs == 12 && bad.is_empty() && l3_ok,
        detail: format!("{pairs} pairs, worst {worst:.3e}; beta(L=3,N=1,K=2) = {l3:.16}; failed: [{}]", bad.join(", ")),
    }
}

fn projector_criterion() -> Outcome {
    let start = Instant::now();
    let tol = RankTolerance::default();
    let mut worst = 0.0_f64;
    let mut count = 0;
    for length in [1.0, 2.0] {
        for n in 1..=3 {
            for k in [1, 2, 4, 8] {
                let l = build_layout(length, k, n).unwrap();
                let e = incidence_matrix(&l);
                let m2 = volume_mass_matrix(&l).unwrap();
                let m = build_test_matrix(&e, None, m2.as_ref(), Mode::Kperp, tol).unwrap();
                worst = worst.max(projector_defect(m.as_ref()));
                count += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        id: "5",
        title: "projector identity max|M2^1/2 E A+ E^T M2^1/2 - I| <= 1e-8 (N <= 3, K <= 8), <= 30 s",
        passed: worst <= PROJECTOR_TOL && secs <= PROJECTOR_BUDGET_S,
        detail: format!("{count} cases, worst defect {worst:.3e}, {secs:.1} s"),
    }
}

fn oracle_criterion(results: &[InfSupResult]) -> Outcome {
    let tol = RankTolerance::default();
    let mut worst = 0.0_f64;
    let mut count = 0;
    let mut bad = Vec::new();
    let extra: Vec<InfSupResult> = [1.0, 2.0]
        .iter()
        .flat_map(|&l| (1..=3).map(move |n| InfSupCase::new(l, n, 1)))
        .map(|c| compute_infsup(&c, &InfSupOptions::default()).unwrap())
        .collect();
    for r in results.iter().chain(&extra).filter(|r| r.n_u <= ORACLE_MAX_NU) {
        let l = r.case.layout().unwrap();
        let e = incidence_matrix(&l);
        let m2 = volume_mass_matrix(&l).unwrap();
        let o = beta_oracle(&e, None, m2.as_ref(), Mode::Kperp, tol).unwrap();
        let d = (o - r.beta_h).abs();
        worst = worst.max(d);
        count += 1;
        if d > ORACLE_TOL {
            bad.push(format!("L={} N={} K={}", r.case.length, r.case.degree, r.case.elements));
        }
    }
    Outcome {
        id: "6",
        title: "SVD path and eigenvalue oracle agree within 1e-9 (n_u <= 2000)",
        passed: count > 0 && bad.is_empty(),
        detail: format!("{count} cases, worst difference {worst:.3e}; failed: [{}]", bad.join(", ")),
    }
}

fn is_positive_definite(m: &Mat<f64>) -> bool {
    m.llt(Side::Lower).is_ok()
}

fn relative_asymmetry(m: &Mat<f64>) -> f64 {
    (m - m.transpose()).norm_max() / m.norm_max()
}

fn structural_checks(layout: &DofLayout, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let e = incidence_matrix(layout);
    for (r, row) in e.rows().enumerate() {
        let mut cols: Vec<usize> = row.iter().map(|&(c, _)| c).collect();
        cols.sort_unstable();
        cols.dedup();
        if cols.len() != 4 {
            return Err(format!("row {r} has {} nonzeros", cols.len()));
        }
        if row.iter().any(|&(_, s)| s != 1 && s != -1) {
            return Err(format!("row {r} has an entry outside {{-1, 0, 1}}"));
        }
        if row.iter().map(|&(_, s)| s as i32).sum::<i32>() != 0 {
            return Err(format!("row {r} does not sum to zero"));
        }
    }
    let sv = e.to_dense().singular_values().map_err(|err| format!("{err:?}"))?;
    let tau = e.nrows().max(e.ncols()) as f64 * f64::EPSILON * sv[0];
    let rank = sv.iter().filter(|&&s| s > tau).count();
    if rank != layout.n_pressure() {
        return Err(format!("rank(E) = {rank}, n_p = {}", layout.n_pressure()));
    }
    for (name, m) in [
        ("M1", flux_mass_matrix(layout).map_err(|e| e.to_string())?),
        ("M2", volume_mass_matrix(layout).map_err(|e| e.to_string())?),
    ] {
        let asym = relative_asymmetry(&m);
        if asym > SYMMETRY_REL_TOL {
            return Err(format!("{name} asymmetry {asym:e}"));
        }
        if !is_positive_definite(&m) {
            return Err(format!("{name} is not positive definite"));
        }
    }
    for _ in 0..COMMUTING_TRIALS {
        let u: Vec<f64> = (0..layout.n_flux()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let eu = e.apply(&u).map_err(|e| e.to_string())?;
        let quad = FluxField::new(*layout, &u)
            .and_then(|f| f.cell_divergence_integrals())
            .map_err(|e| e.to_string())?;
        let d = eu.iter().zip(&quad).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if d > COMMUTING_TOL {
            return Err(format!("commuting defect {d:e}"));
        }
    }
    Ok(())
}

fn structural_criterion(results: &[InfSupResult]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    let start = Instant::now();
    for r in results {
        let l = r.case.layout().unwrap();
        if let Err(msg) = structural_checks(&l, &mut rng) {
            bad.push(format!("L={} N={} K={}: {msg}", r.case.length, r.case.degree, r.case.elements));
        }
    }
    Outcome {
        id: "7",
        title: "structure of E, symmetry/definiteness of M1 and M2, commuting diagram",
        passed: !results.is_empty() && bad.is_empty(),
        detail: format!(
            "{} layouts in {:.1} s; failures: [{}]",
            results.len(),
            start.elapsed().as_secs_f64(),
            bad.join("; ")
        ),
    }
}

fn basis_criterion() -> Outcome {
    let samples: Vec<f64> = (0..64).map(|k| -1.0 + 2.0 * k as f64 / 63.0).collect();
    let (mut ex, mut kr, mut pu, mut ed) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for n in 1..=8 {
        let rule = gll_rule(n).unwrap();
        for k in 0..2 * n {
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            ex = ex.max((rule.integrate(-1.0, 1.0, |t| t.powi(k as i32)) - exact).abs());
        }
        let b = BasisSet1D::new(rule);
        let at_nodes = b.lagrange_at(b.rule().nodes()).unwrap();
        for i in 0..=n {
            for j in 0..=n {
                kr = kr.max((at_nodes[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        let h = b.lagrange_at(&samples).unwrap();
        for q in 0..samples.len() {
            pu = pu.max(((0..=n).map(|i| h[(i, q)]).sum::<f64>() - 1.0).abs());
        }
        let fine = gll_rule(n + 4).unwrap();
        let x = b.rule().nodes();
        for j in 1..=n {
            for i in 1..=n {
                let v = fine.integrate(x[j - 1], x[j], |t| b.edge_values(t).unwrap()[i - 1]);
                ed = ed.max((v - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
    }
    Outcome {
        id: "8",
        title: "basis properties for N = 1..8",
        passed: ex <= EXACTNESS_TOL && kr <= KRONECKER_TOL && pu <= KRONECKER_TOL && ed <= EDGE_DUALITY_TOL,
        detail: format!(
            "exactness {ex:.2e}, Kronecker {kr:.2e}, partition of unity {pu:.2e}, edge duality {ed:.2e}"
        ),
    }
}

fn cutoff_criterion() -> Outcome {
    let case = InfSupCase::new(1.0, 2, 4);
    let betas: Vec<(f64, f64)> = [8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0]
        .into_iter()
        .map(|factor| {
            let opts = InfSupOptions {
                rank_tol: RankTolerance::new(factor).unwrap(),
                ..Default::default()
            };
            (factor, compute_infsup(&case, &opts).unwrap().beta_h)
        })
        .collect();
    let base = betas.iter().find(|(f, _)| *f == 64.0).unwrap().1;
    let spread = betas.iter().map(|(_, b)| (b - base).abs()).fold(0.0, f64::max);
    Outcome {
        id: "9",
        title: "beta_h unchanged to 1e-10 for cutoff factors in [8, 1024] (L=1, N=2, K=4)",
        passed: spread <= CUTOFF_TOL,
        detail: format!("{} factors, max change {spread:.3e}", betas.len()),
    }
}

fn tooling_criterion(max_dofs: usize) -> Outcome {
    let guard = max_dofs.to_string();
    let check_code = cli_main(["infsup", "check", "--max-dofs", guard.as_str()]);

    let dir = tempfile::tempdir().unwrap();
    let run_once = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let svg = dir.path().join(format!("{tag}.svg"));
        let code = cli_main([
            "infsup",
            "sweep",
            "--L",
            "1,2",
            "--degrees",
            "1,2,3",
            "--refinements",
            "2,4,8",
            "--out",
            csv.to_str().unwrap(),
            "--plot-out",
            svg.to_str().unwrap(),
        ]);
        (code, std::fs::read(csv).unwrap_or_default(), std::fs::read(svg).unwrap_or_default())
    };
    let (c1, csv1, svg1) = run_once("a");
    let (c2, csv2, svg2) = run_once("b");
    let identical = c1 == 0 && c2 == 0 && !csv1.is_empty() && csv1 == csv2 && !svg1.is_empty() && svg1 == svg2;
    Outcome {
        id: "10",
        title: "`check` exits 0; repeated sweeps give byte-identical CSV and SVG",
        passed: check_code == 0 && identical,
        detail: format!("check exit {check_code} (guard {max_dofs}); CSV/SVG identical: {identical}"),
    }
}

fn main() {
    faer::set_global_parallelism(Par::Seq);
    let max_dofs = guard();
    let mut outcomes = Vec::new();

    let start = Instant::now();
    let sweep = run_sweep(&table_config(max_dofs)).expect("table sweep");
    let sweep_s = start.elapsed().as_secs_f64();
    let report = check_against_paper(&sweep.results, &PaperReference).expect("check");

    outcomes.push(table_criterion("1", "reference values reproduced for L = 1", 1.0, &report, max_dofs, sweep_s));
    outcomes.push(table_criterion("2", "reference values reproduced for L = 2", 2.0, &report, max_dofs, sweep_s));
    outcomes.push(theory_criterion(&sweep.results));
    outcomes.push(domain_criterion(&sweep.results));
    outcomes.push(projector_criterion());
    outcomes.push(oracle_criterion(&sweep.results));
    outcomes.push(structural_criterion(&sweep.results));
    outcomes.push(basis_criterion());
    outcomes.push(cutoff_criterion());
    outcomes.push(tooling_criterion(max_dofs));

    println!();
    println!("acceptance criteria (flux-DOF guard {max_dofs}):");
    for o in &outcomes {
        println!(
            "[{}] criterion {:>2}: {} -- {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
