use super::factor::symmetrized;
use super::{velocity_norm_matrix, Mode, RankTolerance};
use crate::discretization::IncidenceMatrix;
use crate::error::{Error, Result};
use faer::{Mat, MatRef, Side};

/// Independent evaluation of `beta_h` through the eigenvalues of
/// `G = (M^(2))^{1/2} E A^+ E^T (M^(2))^{1/2}`.
///
/// Shares no factorization with the singular-value path: `A^+` comes from an SVD
/// of `A`, and `G` is replaced by the congruent `L^T E A^+ E^T L` with
/// `M^(2) = L L^T` (Cholesky), which has the same eigenvalues.
pub fn beta_oracle(
    e: &IncidenceMatrix,
    m1: Option<MatRef<'_, f64>>,
    m2: MatRef<'_, f64>,
    mode: Mode,
    tol: RankTolerance,
) -> Result<f64> {
    if m2.nrows() != e.nrows() || m2.ncols() != e.nrows() {
        return Err(Error::Shape(format!(
            "volume mass matrix is {}x{}, expected {n}x{n}",
            m2.nrows(),
            m2.ncols(),
            n = e.nrows()
        )));
    }
    let a = velocity_norm_matrix(e, m1, m2, mode)?;
    let a_pinv = svd_pinv(a.as_ref(), tol)?;
    drop(a);

    // X = E A^+ E^T
    let ea = e.mul_dense(a_pinv.as_ref())?;
    let x = e.mul_dense(ea.transpose())?;

    let chol = m2
        .llt(Side::Lower)
        .map_err(|err| Error::NumericalFailure(format!("Cholesky of M2: {err:?}")))?;
    let l = chol.L();
    let g = l.transpose() * &x * l;
    let g = symmetrized(g.as_ref())?;
    let ev = g
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|err| Error::NumericalFailure(format!("symmetric eigensolver: {err:?}")))?;
    let lambda_max = ev.last().copied().unwrap_or(0.0);
    let cutoff = tol.relative(g.nrows()) * lambda_max.max(0.0);
    ev.iter()
        .copied()
        .find(|&l| l > cutoff)
        .map(f64::sqrt)
        .ok_or(Error::NoPositiveSingularValue { cutoff })
}

/// Moore–Penrose pseudo-inverse from a full SVD, cutting at
/// `tol.relative(n) * sigma_max`.
pub(crate) fn svd_pinv(a: MatRef<'_, f64>, tol: RankTolerance) -> Result<Mat<f64>> {
    let svd = a
        .svd()
        .map_err(|err| Error::NumericalFailure(format!("SVD: {err:?}")))?;
    let s = svd.S();
    let k = s.dim();
    let sigma_max = if k > 0 { s[0] } else { 0.0 };
    let cutoff = tol.relative(a.nrows().max(a.ncols())) * sigma_max;
    let r = (0..k).take_while(|&i| s[i] > cutoff).count();
    let u = svd.U().subcols(0, r);
    let v = svd.V().subcols(0, r);
    let v_scaled = Mat::from_fn(v.nrows(), r, |i, j| v[(i, j)] / s[j]);
    Ok(v_scaled * u.transpose())
}
