//! Discrete inf-sup constant of `b(p, u) = (p, div u)`.
//!
//! With `A` the Gram matrix of the velocity norm and `M^(2)` the volume mass
//! matrix, the constant is the smallest positive singular value of
//! `M = (M^(2))^{1/2} E (A^+)^{1/2}`. In [`Mode::Kperp`] the velocity is measured
//! by `|| div u ||`, i.e. `A = E^T M^(2) E`; in [`Mode::Hdiv`] by the full
//! H(div) norm, `A = M^(1) + E^T M^(2) E`.

mod factor;
mod oracle;

pub use factor::{sym_factor_psd, NormFactorization, SYMMETRY_TOL};
pub use oracle::beta_oracle;

use crate::discretization::{
    build_layout, flux_mass_matrix, volume_mass_matrix, DofLayout, IncidenceMatrix,
};
use crate::error::{Error, Result};
use faer::{Mat, MatRef};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

/// Rank cutoff policy: `tau = dim * eps * factor * (largest eigen/singular value)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankTolerance {
    pub factor: f64,
}

impl RankTolerance {
    pub const DEFAULT_FACTOR: f64 = 64.0;

    pub fn new(factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "rank tolerance factor must be positive, got {factor}"
            )));
        }
        Ok(Self { factor })
    }

    /// Relative cutoff for a problem of dimension `dim`.
    pub fn relative(&self, dim: usize) -> f64 {
        dim as f64 * f64::EPSILON * self.factor
    }
}

impl Default for RankTolerance {
    fn default() -> Self {
        Self {
            factor: Self::DEFAULT_FACTOR,
        }
    }
}

/// Velocity norm in the denominator of the inf-sup quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum Mode {
    /// `|| u ||_{K^perp} = || div u ||_{L2}`.
    #[default]
    Kperp,
    /// `|| u ||_{H(div)}`.
    Hdiv,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Kperp => "kperp",
            Mode::Hdiv => "hdiv",
        }
    }

    pub fn needs_flux_mass(&self) -> bool {
        matches!(self, Mode::Hdiv)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kperp" => Ok(Mode::Kperp),
            "hdiv" => Ok(Mode::Hdiv),
            other => Err(Error::InvalidParameter(format!(
                "unknown mode '{other}', expected 'kperp' or 'hdiv'"
            ))),
        }
    }
}

/// Velocity norm matrix `A` for `mode`.
pub fn velocity_norm_matrix(
    e: &IncidenceMatrix,
    m1: Option<MatRef<'_, f64>>,
    m2: MatRef<'_, f64>,
    mode: Mode,
) -> Result<Mat<f64>> {
    let mut a = e.congruence(m2)?;
    if mode == Mode::Hdiv {
        let m1 = m1.ok_or_else(|| {
            Error::InvalidParameter("hdiv mode needs the flux mass matrix".into())
        })?;
        if m1.nrows() != a.nrows() || m1.ncols() != a.ncols() {
            return Err(Error::Shape(format!(
                "flux mass matrix is {}x{}, expected {n}x{n}",
                m1.nrows(),
                m1.ncols(),
                n = a.nrows()
            )));
        }
        a += m1;
    }
    Ok(a)
}

/// Builds `M = (M^(2))^{1/2} E (A^+)^{1/2}` together with the factorization of `A`.
///
/// With symmetric factors `S_y^{-T} = S_y^{-1} = (M^(2))^{1/2}` and
/// `S_x^{-1} = (A^+)^{1/2}`.
pub fn build_test_matrix_with_factor(
    e: &IncidenceMatrix,
    m1: Option<MatRef<'_, f64>>,
    m2: MatRef<'_, f64>,
    mode: Mode,
    tol: RankTolerance,
) -> Result<(Mat<f64>, NormFactorization)> {
    if m2.nrows() != e.nrows() || m2.ncols() != e.nrows() {
        return Err(Error::Shape(format!(
            "volume mass matrix is {}x{}, expected {n}x{n}",
            m2.nrows(),
            m2.ncols(),
            n = e.nrows()
        )));
    }
    let a = velocity_norm_matrix(e, m1, m2, mode)?;
    let a_fac = sym_factor_psd(a.as_ref(), tol)?;
    drop(a);
    let m2_sqrt = sym_factor_psd(m2, tol)?.sqrt();
    let e_p = e.mul_dense(a_fac.pinv_sqrt().as_ref())?;
    Ok((m2_sqrt * e_p, a_fac))
}

/// `M = (M^(2))^{1/2} E (A^+)^{1/2}`, an `n_p x n_u` matrix.
pub fn build_test_matrix(
    e: &IncidenceMatrix,
    m1: Option<MatRef<'_, f64>>,
    m2: MatRef<'_, f64>,
    mode: Mode,
    tol: RankTolerance,
) -> Result<Mat<f64>> {
    build_test_matrix_with_factor(e, m1, m2, mode, tol).map(|(m, _)| m)
}

/// Singular spectrum of a test matrix split at the rank cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSummary {
    /// Smallest singular value above the cutoff.
    pub beta: f64,
    pub retained: usize,
    pub sigma_max: f64,
    pub cutoff: f64,
    pub largest_discarded: Option<f64>,
}

/// Smallest positive singular value of `m`, with cutoff `tau = tol.relative(max(rows, cols)) * sigma_max`.
pub fn smallest_positive_singular(m: MatRef<'_, f64>, tol: RankTolerance) -> Result<SingularSummary> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::NoPositiveSingularValue { cutoff: 0.0 });
    }
    let mut all_finite = true;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            all_finite &= m[(i, j)].is_finite();
        }
    }
    if !all_finite {
        return Err(Error::NumericalFailure("test matrix has non-finite entries".into()));
    }
    // Nonincreasing order.
    let sv = m
        .singular_values()
        .map_err(|e| Error::NumericalFailure(format!("SVD: {e:?}")))?;
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let cutoff = tol.relative(m.nrows().max(m.ncols())) * sigma_max;
    let retained = sv.iter().take_while(|&&s| s > cutoff).count();
    if retained == 0 {
        return Err(Error::NoPositiveSingularValue { cutoff });
    }
    Ok(SingularSummary {
        beta: sv[retained - 1],
        retained,
        sigma_max,
        cutoff,
        largest_discarded: sv.get(retained).copied(),
    })
}

/// `max |M M^T - I|`, the defect of the projector identity
/// `(M^(2))^{1/2} E A^+ E^T (M^(2))^{1/2} = I`.
pub fn projector_defect(m: MatRef<'_, f64>) -> f64 {
    let g = m * m.transpose();
    let n = g.nrows();
    let mut worst = 0.0_f64;
    for j in 0..n {
        for i in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}

/// One point of the `(L, N, K)` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfSupCase {
    pub length: f64,
    pub degree: usize,
    pub elements: usize,
}

impl InfSupCase {
    pub fn new(length: f64, degree: usize, elements: usize) -> Self {
        Self {
            length,
            degree,
            elements,
        }
    }

    /// Mesh parameter as tabulated, `h = 1/K`.
    pub fn h(&self) -> f64 {
        1.0 / self.elements as f64
    }

    /// Physical element size `L/K`.
    pub fn element_size(&self) -> f64 {
        self.length / self.elements as f64
    }

    pub fn layout(&self) -> Result<DofLayout> {
        build_layout(self.length, self.elements, self.degree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InfSupOptions {
    pub mode: Mode,
    pub rank_tol: RankTolerance,
    /// Also evaluate [`beta_oracle`] and store it in the result.
    pub oracle: bool,
}

/// Outcome of one inf-sup evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct InfSupResult {
    pub case: InfSupCase,
    pub mode: Mode,
    pub beta_h: f64,
    pub sigma_max: f64,
    /// Singular values of `M` above the cutoff.
    pub retained: usize,
    /// Numerical rank of `E`, read off the factorization of `A` in kperp mode
    /// (`rank(E^T M2 E) = rank(E)`) and of `E^T M2 E` otherwise.
    pub rank_e: usize,
    pub sigma_cutoff: f64,
    pub largest_discarded: Option<f64>,
    pub n_u: usize,
    pub n_p: usize,
    pub elapsed_ms: f64,
    pub oracle_beta: Option<f64>,
}

/// Assembles the spaces for `case` and evaluates `beta_h`.
pub fn compute_infsup(case: &InfSupCase, opts: &InfSupOptions) -> Result<InfSupResult> {
    let start = Instant::now();
    let layout = case.layout()?;
    let e = IncidenceMatrix::new(&layout);
    let m2 = volume_mass_matrix(&layout)?;
    let m1 = if opts.mode.needs_flux_mass() {
        Some(flux_mass_matrix(&layout)?)
    } else {
        None
    };
    let m1_ref = m1.as_ref().map(|m| m.as_ref());

    let (m, a_fac) = build_test_matrix_with_factor(&e, m1_ref, m2.as_ref(), opts.mode, opts.rank_tol)?;
    let rank_e = match opts.mode {
        Mode::Kperp => a_fac.rank(),
        Mode::Hdiv => {
            let a = e.congruence(m2.as_ref())?;
            sym_factor_psd(a.as_ref(), opts.rank_tol)?.rank()
        }
    };
    drop(a_fac);
    let summary = smallest_positive_singular(m.as_ref(), opts.rank_tol)?;
    drop(m);

    let oracle_beta = if opts.oracle {
        Some(beta_oracle(&e, m1_ref, m2.as_ref(), opts.mode, opts.rank_tol)?)
    } else {
        None
    };

    Ok(InfSupResult {
        case: *case,
        mode: opts.mode,
        beta_h: summary.beta,
        sigma_max: summary.sigma_max,
        retained: summary.retained,
        rank_e,
        sigma_cutoff: summary.cutoff,
        largest_discarded: summary.largest_discarded,
        n_u: layout.n_flux(),
        n_p: layout.n_pressure(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        oracle_beta,
    })
}
