//! Discrete inf-sup constant of the bilinear form `(p, div u)` on mimetic
//! spectral element spaces over square domains.
//!
//! The pipeline is: GLL bases ([`polybasis`]) → conforming flux/pressure spaces on a
//! `K x K` mesh ([`discretization`]) → norm factorizations and the smallest positive
//! singular value of the scaled divergence ([`infsup`]).

pub mod discretization;
pub mod error;
pub mod infsup;
pub mod polybasis;

pub use discretization::{
    build_layout, divergence_coefficients, flux_mass_matrix, incidence_matrix, volume_mass_matrix,
    DofLayout, FluxField, IncidenceMatrix, MassMatrices,
};
pub use error::{Error, Result};
pub use infsup::{
    beta_oracle, build_test_matrix, compute_infsup, projector_defect, smallest_positive_singular,
    sym_factor_psd, InfSupCase, InfSupOptions, InfSupResult, Mode, NormFactorization,
    RankTolerance, SingularSummary,
};
pub use polybasis::{gll_rule, BasisSet1D, QuadratureRule1D};

/// Re-exported so downstream crates can name matrix types without a direct dependency.
pub use faer;
