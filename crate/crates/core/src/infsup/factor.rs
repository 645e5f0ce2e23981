use super::RankTolerance;
use crate::error::{Error, Result};
use faer::{Mat, MatRef, Side};

/// Relative asymmetry accepted before a matrix is rejected as non-symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Eigendecomposition of a symmetric positive semidefinite matrix, with the
/// spectrum split at a rank cutoff.
///
/// Eigenvalues at or below the cutoff are treated as exact zeros, so
/// [`sqrt`](Self::sqrt) and [`pinv_sqrt`](Self::pinv_sqrt) act on the numerical
/// range only. `pinv_sqrt * A * pinv_sqrt` is the orthogonal projector onto `range(A)`.
#[derive(Debug, Clone)]
pub struct NormFactorization {
    eigenvalues: Vec<f64>,
    eigenvectors: Mat<f64>,
    rank: usize,
    cutoff: f64,
}

impl NormFactorization {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues in nondecreasing order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> MatRef<'_, f64> {
        self.eigenvectors.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Absolute cutoff `tau`; eigenvalues `<= tau` are discarded.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Largest discarded eigenvalue, if any were discarded.
    pub fn largest_discarded(&self) -> Option<f64> {
        let n = self.dim();
        (self.rank < n).then(|| self.eigenvalues[n - self.rank - 1])
    }

    /// Smallest retained eigenvalue, if any were retained.
    pub fn smallest_retained(&self) -> Option<f64> {
        let n = self.dim();
        (self.rank > 0).then(|| self.eigenvalues[n - self.rank])
    }

    /// `A^{1/2}`.
    pub fn sqrt(&self) -> Mat<f64> {
        self.spectral_function(|l| l.sqrt())
    }

    /// `(A^+)^{1/2}`.
    pub fn pinv_sqrt(&self) -> Mat<f64> {
        self.spectral_function(|l| 1.0 / l.sqrt())
    }

    /// `A^+`.
    pub fn pinv(&self) -> Mat<f64> {
        self.spectral_function(|l| 1.0 / l)
    }

    /// `Q f(Lambda) Q^T` over retained eigenpairs, with `f > 0`.
    fn spectral_function<F: Fn(f64) -> f64>(&self, f: F) -> Mat<f64> {
        let n = self.dim();
        let first = n - self.rank;
        let q = self.eigenvectors.as_ref().subcols(first, self.rank);
        // W = Q_r f^{1/2}; result W W^T.
        let w = Mat::from_fn(n, self.rank, |i, j| {
            q[(i, j)] * f(self.eigenvalues[first + j]).sqrt()
        });
        let mut out = &w * w.transpose();
        symmetrize_in_place(&mut out);
        out
    }
}

pub(crate) fn symmetrize_in_place(m: &mut Mat<f64>) {
    let n = m.nrows();
    for j in 0..n {
        for i in j + 1..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

/// Checks symmetry within [`SYMMETRY_TOL`] and returns `(A + A^T) / 2`.
pub(crate) fn symmetrized(a: MatRef<'_, f64>) -> Result<Mat<f64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::Shape(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let scale = a.norm_max();
    let mut asym = 0.0_f64;
    for j in 0..a.ncols() {
        for i in j + 1..a.nrows() {
            asym = asym.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    if asym > SYMMETRY_TOL * scale {
        return Err(Error::Shape(format!(
            "matrix is not symmetric: max asymmetry {asym:e} relative to {scale:e}"
        )));
    }
    let mut s = a.to_owned();
    symmetrize_in_place(&mut s);
    Ok(s)
}

/// Factors a symmetric positive semidefinite matrix by full eigendecomposition.
///
/// The cutoff is `tau = tol.relative(dim) * lambda_max`. Eigenvalues below `-tau`
/// are rejected.
pub fn sym_factor_psd(a: MatRef<'_, f64>, tol: RankTolerance) -> Result<NormFactorization> {
    let s = symmetrized(a)?;
    let n = s.nrows();
    let evd = s
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::NumericalFailure(format!("symmetric eigensolver: {e:?}")))?;
    let eigenvalues: Vec<f64> = (0..n).map(|i| evd.S()[i]).collect();
    let lambda_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = tol.relative(n) * lambda_max;
    if let Some(&lo) = eigenvalues.first() {
        if lo < -cutoff {
            return Err(Error::NotPsd {
                eigenvalue: lo,
                cutoff,
            });
        }
    }
    let rank = eigenvalues.iter().filter(|&&l| l > cutoff).count();
    Ok(NormFactorization {
        eigenvalues,
        eigenvectors: evd.U().to_owned(),
        rank,
        cutoff,
    })
}
