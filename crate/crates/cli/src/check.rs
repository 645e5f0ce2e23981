use crate::csv_io::format_significant;
use crate::error::{ReportError, Result};
use crate::reference::PaperReference;
use infsup_core::{InfSupResult, Mode};
use std::fmt;

/// Allowed distance from the tabulated value and from the exact constant 1.
pub const CHECK_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub length: f64,
    pub degree: usize,
    pub elements: usize,
    pub computed: f64,
    pub reference: f64,
    pub diff_reference: f64,
    pub diff_one: f64,
}

impl CheckRow {
    pub fn passed(&self) -> bool {
        self.diff_reference <= CHECK_TOL && self.diff_one <= CHECK_TOL
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
    /// Tabulated cells with no computed result (for example over the DOF guard).
    pub missing: Vec<(f64, usize, usize)>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CheckRow::passed)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>4} {:>2} {:>6} {:>18} {:>18} {:>13} {:>13}  status",
            "L", "N", "h", "beta_h", "reference", "|diff ref|", "|diff 1|"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>4} {:>2} {:>6} {:>18} {:>18} {:>13.6e} {:>13.6e}  {}",
                r.length,
                r.degree,
                format!("1/{}", r.elements),
                format_significant(r.computed, 15),
                format_significant(r.reference, 15),
                r.diff_reference,
                r.diff_one,
                if r.passed() { "pass" } else { "FAIL" }
            )?;
        }
        for (l, n, k) in &self.missing {
            writeln!(f, "{l:>4} {n:>2} {:>6} not computed", format!("1/{k}"))?;
        }
        write!(
            f,
            "{} of {} compared cells pass (tolerance {CHECK_TOL:e})",
            self.rows.len() - self.failures(),
            self.rows.len()
        )
    }
}

/// Compares kperp results with the reference tables.
pub fn check_against_paper(
    results: &[InfSupResult],
    refs: &PaperReference,
) -> Result<CheckReport> {
    if let Some(r) = results.iter().find(|r| r.mode != Mode::Kperp) {
        return Err(ReportError::Validation(format!(
            "reference values are for kperp mode, got a {} result",
            r.mode
        )));
    }
    let mut report = CheckReport::default();
    for r in results {
        let c = r.case;
        if let Some(reference) = refs.get(c.length, c.degree, c.elements) {
            report.rows.push(CheckRow {
                length: c.length,
                degree: c.degree,
                elements: c.elements,
                computed: r.beta_h,
                reference,
                diff_reference: (r.beta_h - reference).abs(),
                diff_one: (r.beta_h - 1.0).abs(),
            });
        }
    }
    let lengths: Vec<f64> = {
        let mut l: Vec<f64> = results.iter().map(|r| r.case.length).collect();
        l.sort_by(f64::total_cmp);
        l.dedup();
        l
    };
    for v in refs.values() {
        if lengths.contains(&v.length)
            && !report.rows.iter().any(|r| {
                r.length == v.length && r.degree == v.degree && r.elements == v.elements
            })
        {
            report.missing.push((v.length, v.degree, v.elements));
        }
    }
    Ok(report)
}
