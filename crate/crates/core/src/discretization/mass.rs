use super::DofLayout;
use crate::error::Result;
use crate::polybasis::{gll_rule, BasisSet1D};
use faer::Mat;

/// 1D Gram matrices of the Lagrange and edge bases on `[-1, 1]`.
struct ReferenceGram {
    lagrange: Vec<Vec<f64>>,
    edge: Vec<Vec<f64>>,
}

impl ReferenceGram {
    fn new(degree: usize, quad_degree: usize) -> Result<Self> {
        let basis = BasisSet1D::with_degree(degree)?;
        let quad = gll_rule(quad_degree)?;
        let h = basis.lagrange_at(quad.nodes())?;
        let e = basis.edge_at(quad.nodes())?;
        let w = quad.weights();
        let gram = |m: &Mat<f64>| {
            (0..m.nrows())
                .map(|i| {
                    (0..m.nrows())
                        .map(|j| (0..w.len()).map(|q| w[q] * m[(i, q)] * m[(j, q)]).sum())
                        .collect()
                })
                .collect()
        };
        Ok(Self {
            lagrange: gram(&h),
            edge: gram(&e),
        })
    }
}

/// Quadrature degree per direction used for the mass matrices.
pub fn mass_quadrature_degree(layout: &DofLayout) -> usize {
    layout.degree() + 2
}

/// Volume mass matrix `M^(2)`, the L2 Gram matrix of `e_i(xi) e_j(eta) / det J`.
///
/// Block diagonal per element; with `det J = (h/2)^2` each entry is
/// `(1 / det J) * G_e[c][c'] * G_e[d][d']`.
pub fn volume_mass_matrix(layout: &DofLayout) -> Result<Mat<f64>> {
    let n_deg = layout.degree();
    let gram = ReferenceGram::new(n_deg, mass_quadrature_degree(layout))?;
    let half = 0.5 * layout.element_size();
    let inv_det = 1.0 / (half * half);
    let np = layout.n_pressure();
    let mut m = Mat::zeros(np, np);
    for ey in 0..layout.elements() {
        for ex in 0..layout.elements() {
            for d in 0..n_deg {
                for c in 0..n_deg {
                    let row = layout.cell_dof(ex * n_deg + c, ey * n_deg + d);
                    for d2 in 0..n_deg {
                        for c2 in 0..n_deg {
                            let col = layout.cell_dof(ex * n_deg + c2, ey * n_deg + d2);
                            m[(row, col)] = inv_det * gram.edge[c][c2] * gram.edge[d][d2];
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Flux mass matrix `M^(1)` under the contravariant Piola map.
///
/// `u_x` functions are `(2/h) h_a(xi) e_b(eta)`, `u_y` functions `(2/h) e_a(xi) h_b(eta)`.
/// The Piola factor `(2/h)^2` cancels the Jacobian `(h/2)^2`, so element blocks are
/// products of reference Gram matrices. Interface lines shared by two elements
/// accumulate both contributions. `u_x` and `u_y` never couple.
pub fn flux_mass_matrix(layout: &DofLayout) -> Result<Mat<f64>> {
    let n_deg = layout.degree();
    let gram = ReferenceGram::new(n_deg, mass_quadrature_degree(layout))?;
    let nu = layout.n_flux();
    let mut m = Mat::zeros(nu, nu);
    for ey in 0..layout.elements() {
        for ex in 0..layout.elements() {
            for a in 0..=n_deg {
                for b in 0..n_deg {
                    for a2 in 0..=n_deg {
                        for b2 in 0..n_deg {
                            let v = gram.lagrange[a][a2] * gram.edge[b][b2];
                            let (i, j) = (
                                layout.ux_dof(layout.fine_line(ex, a), ey * n_deg + b),
                                layout.ux_dof(layout.fine_line(ex, a2), ey * n_deg + b2),
                            );
                            m[(i, j)] += v;
                            let (i, j) = (
                                layout.uy_dof(layout.fine_line(ey, a), ex * n_deg + b),
                                layout.uy_dof(layout.fine_line(ey, a2), ex * n_deg + b2),
                            );
                            m[(i, j)] += v;
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Flux and volume mass matrices of one layout.
#[derive(Debug, Clone)]
pub struct MassMatrices {
    pub flux: Mat<f64>,
    pub volume: Mat<f64>,
    pub quadrature_degree: usize,
}

impl MassMatrices {
    pub fn assemble(layout: &DofLayout) -> Result<Self> {
        Ok(Self {
            flux: flux_mass_matrix(layout)?,
            volume: volume_mass_matrix(layout)?,
            quadrature_degree: mass_quadrature_degree(layout),
        })
    }
}
