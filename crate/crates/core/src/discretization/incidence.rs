use super::DofLayout;
use crate::error::{Error, Result};
use faer::{Mat, MatRef};

/// Discrete divergence `E^{2,1}`: flux coefficients to cell coefficients.
///
/// Every row (cell) holds exactly four entries: `-1` on the left and bottom
/// edges, `+1` on the right and top edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n_cols: usize,
    rows: Vec<[(usize, i8); 4]>,
}

impl IncidenceMatrix {
    pub fn new(layout: &DofLayout) -> Self {
        let n = layout.cells_per_side();
        let mut rows = Vec::with_capacity(layout.n_pressure());
        for row in 0..n {
            for col in 0..n {
                rows.push([
                    (layout.ux_dof(col, row), -1),
                    (layout.ux_dof(col + 1, row), 1),
                    (layout.uy_dof(row, col), -1),
                    (layout.uy_dof(row + 1, col), 1),
                ]);
            }
        }
        Self {
            n_cols: layout.n_flux(),
            rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.n_cols
    }

    /// Nonzero entries of row `r` as `(column, sign)`.
    pub fn row(&self, r: usize) -> &[(usize, i8); 4] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, i8); 4]> {
        self.rows.iter()
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let mut out = Mat::zeros(self.nrows(), self.ncols());
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, s) in row {
                out[(r, c)] = s as f64;
            }
        }
        out
    }

    /// `E u`.
    pub fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.n_cols {
            return Err(Error::Shape(format!(
                "flux vector has length {}, expected {}",
                u.len(),
                self.n_cols
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(c, s)| s as f64 * u[c]).sum())
            .collect())
    }

    /// `E X` for a dense `X` with `ncols()` rows.
    pub fn mul_dense(&self, x: MatRef<'_, f64>) -> Result<Mat<f64>> {
        if x.nrows() != self.n_cols {
            return Err(Error::Shape(format!(
                "E is {}x{} but right operand has {} rows",
                self.nrows(),
                self.n_cols,
                x.nrows()
            )));
        }
        let mut out = Mat::zeros(self.nrows(), x.ncols());
        for j in 0..x.ncols() {
            let xj = x.col(j);
            for (r, row) in self.rows.iter().enumerate() {
                out[(r, j)] = row.iter().map(|&(c, s)| s as f64 * xj[c]).sum();
            }
        }
        Ok(out)
    }

    /// `X E` for a dense `X` with `nrows()` columns.
    pub fn dense_mul(&self, x: MatRef<'_, f64>) -> Result<Mat<f64>> {
        if x.ncols() != self.nrows() {
            return Err(Error::Shape(format!(
                "E is {}x{} but left operand has {} columns",
                self.nrows(),
                self.n_cols,
                x.ncols()
            )));
        }
        let mut out = Mat::<f64>::zeros(x.nrows(), self.n_cols);
        for (r, row) in self.rows.iter().enumerate() {
            let xr = x.col(r);
            for &(c, s) in row {
                let mut oc = out.col_mut(c);
                let s = s as f64;
                for i in 0..xr.nrows() {
                    oc[i] += s * xr[i];
                }
            }
        }
        Ok(out)
    }

    /// `E^T W E` for a dense symmetric `W` of size `nrows()`.
    pub fn congruence(&self, w: MatRef<'_, f64>) -> Result<Mat<f64>> {
        if w.nrows() != self.nrows() || w.ncols() != self.nrows() {
            return Err(Error::Shape(format!(
                "weight matrix is {}x{}, expected {n}x{n}",
                w.nrows(),
                w.ncols(),
                n = self.nrows()
            )));
        }
        // (W E) is n_p x n_u; E^T (W E) = ((W E)^T E)^T and W symmetric gives E^T W E = (E^T W) E.
        let we = self.dense_mul(w)?;
        self.dense_mul(we.transpose())
    }
}

/// Shorthand for [`IncidenceMatrix::new`].
pub fn incidence_matrix(layout: &DofLayout) -> IncidenceMatrix {
    IncidenceMatrix::new(layout)
}

/// Cell-wise divergence coefficients `E u`.
pub fn divergence_coefficients(e: &IncidenceMatrix, u: &[f64]) -> Result<Vec<f64>> {
    e.apply(u)
}
