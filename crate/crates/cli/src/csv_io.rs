use crate::error::{ReportError, Result};
use crate::plot::PlotPoint;
use crate::sweep::SkippedCase;
use infsup_core::InfSupResult;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const CSV_HEADER: &str = "L,N,K,h,mode,beta_h,rank_E,n_u,n_p,sigma_cutoff,elapsed_ms";
pub const SKIPPED_HEADER: &str = "L,N,K,h,mode,n_u,n_p,reason";

/// Fixed-point rendering of `x` with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", digits.saturating_sub(1), 0.0);
    }
    let exp = x.abs().log10().floor() as i32;
    let mut decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (0.9999...96 → 1.000...).
    if decimals > 0 {
        let rounded: f64 = s.parse().unwrap_or(x);
        if rounded.abs() >= 10f64.powi(exp + 1) {
            decimals -= 1;
            s = format!("{x:.decimals$}");
        }
    }
    s
}

/// Path of the side file that lists skipped cases.
pub fn skipped_path(path: &Path) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".skipped.csv");
    PathBuf::from(p)
}

/// Renders results as CSV text, one row per result in the given order.
pub fn results_csv(results: &[InfSupResult], timings: bool) -> String {
    let mut s = String::new();
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in results {
        let elapsed = if timings {
            format!("{:.3}", r.elapsed_ms)
        } else {
            String::new()
        };
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{:.6e},{}",
            r.case.length,
            r.case.degree,
            r.case.elements,
            r.case.h(),
            r.mode,
            format_significant(r.beta_h, 15),
            r.rank_e,
            r.n_u,
            r.n_p,
            r.sigma_cutoff,
            elapsed
        );
    }
    s
}

pub fn skipped_csv(skipped: &[SkippedCase]) -> String {
    let mut s = String::new();
    s.push_str(SKIPPED_HEADER);
    s.push('\n');
    for k in skipped {
        let reason = k.reason.replace(['"', ',', '\n'], " ");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            k.case.length,
            k.case.degree,
            k.case.elements,
            k.case.h(),
            k.mode,
            k.n_u,
            k.n_p,
            reason
        );
    }
    s
}

/// Writes `results` to `path` and skipped cases, if any, to `<path>.skipped.csv`.
pub fn write_csv(
    results: &[InfSupResult],
    skipped: &[SkippedCase],
    path: &Path,
    timings: bool,
) -> Result<()> {
    std::fs::write(path, results_csv(results, timings)).map_err(|e| ReportError::io(path, e))?;
    let side = skipped_path(path);
    if skipped.is_empty() {
        if side.exists() {
            std::fs::remove_file(&side).map_err(|e| ReportError::io(&side, e))?;
        }
    } else {
        std::fs::write(&side, skipped_csv(skipped)).map_err(|e| ReportError::io(&side, e))?;
    }
    Ok(())
}

/// Reads the plot data back from a results CSV.
pub fn read_csv(path: &Path) -> Result<Vec<PlotPoint>> {
    let bad = |message: String| ReportError::Csv {
        path: path.to_path_buf(),
        message,
    };
    let mut rdr = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => ReportError::io(path, io),
        other => bad(format!("{other:?}")),
    })?;
    let header = rdr
        .headers()
        .map_err(|e| bad(e.to_string()))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CSV_HEADER {
        return Err(bad(format!("unexpected header '{header}'")));
    }
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        if field(5).is_empty() {
            continue;
        }
        let parse_err = |what: &str| bad(format!("row {}: invalid {what}", line + 2));
        out.push(PlotPoint {
            length: field(0).parse().map_err(|_| parse_err("L"))?,
            degree: field(1).parse().map_err(|_| parse_err("N"))?,
            elements: field(2).parse().map_err(|_| parse_err("K"))?,
            beta: field(5).parse().map_err(|_| parse_err("beta_h"))?,
        });
    }
    Ok(out)
}
