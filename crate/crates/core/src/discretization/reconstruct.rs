use super::DofLayout;
use crate::error::{Error, Result};
use crate::polybasis::{gll_rule, BasisSet1D};

/// A flux field reconstructed from its coefficient vector.
///
/// Used to check the discrete divergence against the divergence of the actual
/// polynomial field, without going through the incidence matrix.
#[derive(Debug, Clone)]
pub struct FluxField<'a> {
    layout: DofLayout,
    basis: BasisSet1D,
    coeffs: &'a [f64],
}

impl<'a> FluxField<'a> {
    pub fn new(layout: DofLayout, coeffs: &'a [f64]) -> Result<Self> {
        if coeffs.len() != layout.n_flux() {
            return Err(Error::Shape(format!(
                "flux vector has length {}, expected {}",
                coeffs.len(),
                layout.n_flux()
            )));
        }
        Ok(Self {
            basis: BasisSet1D::with_degree(layout.degree())?,
            layout,
            coeffs,
        })
    }

    fn element_of(&self, x: f64) -> (usize, f64) {
        let h = self.layout.element_size();
        let k = self.layout.elements();
        let e = ((x / h).floor().max(0.0) as usize).min(k - 1);
        let xi = (2.0 * (x - e as f64 * h) / h - 1.0).clamp(-1.0, 1.0);
        (e, xi)
    }

    /// Physical velocity and divergence at `(x, y)` in `[0, L]^2`.
    pub fn evaluate(&self, x: f64, y: f64) -> Result<([f64; 2], f64)> {
        let (ex, xi) = self.element_of(x);
        let (ey, eta) = self.element_of(y);
        self.evaluate_local(ex, ey, xi, eta)
    }

    fn evaluate_local(&self, ex: usize, ey: usize, xi: f64, eta: f64) -> Result<([f64; 2], f64)> {
        let l = &self.layout;
        let n = l.degree();
        let scale = 2.0 / l.element_size();
        let (hx, dhx, ex_) = (
            self.basis.lagrange_values(xi)?,
            self.basis.lagrange_derivs(xi)?,
            self.basis.edge_values(xi)?,
        );
        let (hy, dhy, ey_) = (
            self.basis.lagrange_values(eta)?,
            self.basis.lagrange_derivs(eta)?,
            self.basis.edge_values(eta)?,
        );
        let (mut ux, mut uy, mut div) = (0.0, 0.0, 0.0);
        for a in 0..=n {
            for b in 0..n {
                let cx = self.coeffs[l.ux_dof(l.fine_line(ex, a), ey * n + b)];
                ux += scale * cx * hx[a] * ey_[b];
                div += scale * scale * cx * dhx[a] * ey_[b];
                let cy = self.coeffs[l.uy_dof(l.fine_line(ey, a), ex * n + b)];
                uy += scale * cy * ex_[b] * hy[a];
                div += scale * scale * cy * ex_[b] * dhy[a];
            }
        }
        Ok(([ux, uy], div))
    }

    /// Integral of `div u` over every fine cell, in cell numbering.
    pub fn cell_divergence_integrals(&self) -> Result<Vec<f64>> {
        let l = &self.layout;
        let n = l.degree();
        let nodes = self.basis.rule().nodes().to_vec();
        let quad = gll_rule(n + 3)?;
        let jac = (0.5 * l.element_size()).powi(2);
        let mut out = vec![0.0; l.n_pressure()];
        for ey in 0..l.elements() {
            for ex in 0..l.elements() {
                for d in 0..n {
                    for c in 0..n {
                        let mut total = 0.0;
                        let (x0, x1) = (nodes[c], nodes[c + 1]);
                        let (y0, y1) = (nodes[d], nodes[d + 1]);
                        for (&qx, &wx) in quad.nodes().iter().zip(quad.weights()) {
                            let xi = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * qx;
                            for (&qy, &wy) in quad.nodes().iter().zip(quad.weights()) {
                                let eta = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * qy;
                                let (_, div) = self.evaluate_local(ex, ey, xi, eta)?;
                                total += wx * wy * div;
                            }
                        }
                        total *= 0.25 * (x1 - x0) * (y1 - y0) * jac;
                        out[l.cell_dof(ex * n + c, ey * n + d)] = total;
                    }
                }
            }
        }
        Ok(out)
    }
}
