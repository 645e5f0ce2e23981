use crate::error::{Error, Result};

/// Degree-of-freedom layout of a `K x K` mesh of degree-`N` square elements on `[0, L]^2`.
///
/// Matched GLL sub-grids make the conforming assembly an `n x n` fine cell grid with
/// `n = N K`. Flux DOFs are numbered `u_x` first (vertical edge lines, line-major),
/// then `u_y` (horizontal edge lines, line-major); cells are numbered row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DofLayout {
    length: f64,
    elements: usize,
    degree: usize,
}

impl DofLayout {
    pub fn new(length: f64, elements: usize, degree: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "domain length must be positive, got {length}"
            )));
        }
        if elements < 1 {
            return Err(Error::InvalidParameter(
                "number of elements per direction must be at least 1".into(),
            ));
        }
        if degree < 1 {
            return Err(Error::InvalidDegree(degree));
        }
        Ok(Self {
            length,
            elements,
            degree,
        })
    }

    /// Domain edge length `L`.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Elements per direction `K`.
    pub fn elements(&self) -> usize {
        self.elements
    }

    /// Polynomial degree `N`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Element edge length `L / K`.
    pub fn element_size(&self) -> f64 {
        self.length / self.elements as f64
    }

    /// Fine cells per direction, `N K`.
    pub fn cells_per_side(&self) -> usize {
        self.degree * self.elements
    }

    pub fn n_pressure(&self) -> usize {
        let n = self.cells_per_side();
        n * n
    }

    pub fn n_flux(&self) -> usize {
        let n = self.cells_per_side();
        2 * n * (n + 1)
    }

    /// Flux DOF of `u_x` on vertical line `line` (0..=n), fine row `row` (0..n).
    pub fn ux_dof(&self, line: usize, row: usize) -> usize {
        let n = self.cells_per_side();
        debug_assert!(line <= n && row < n);
        line * n + row
    }

    /// Flux DOF of `u_y` on horizontal line `line` (0..=n), fine column `col` (0..n).
    pub fn uy_dof(&self, line: usize, col: usize) -> usize {
        let n = self.cells_per_side();
        debug_assert!(line <= n && col < n);
        n * (n + 1) + line * n + col
    }

    /// Pressure DOF of fine cell at column `col`, row `row`.
    pub fn cell_dof(&self, col: usize, row: usize) -> usize {
        let n = self.cells_per_side();
        debug_assert!(col < n && row < n);
        row * n + col
    }

    /// Fine grid index of the local GLL line `local` (0..=N) of element `elem`.
    pub fn fine_line(&self, elem: usize, local: usize) -> usize {
        elem * self.degree + local
    }
}

/// Shorthand for [`DofLayout::new`].
pub fn build_layout(length: f64, elements: usize, degree: usize) -> Result<DofLayout> {
    DofLayout::new(length, elements, degree)
}
