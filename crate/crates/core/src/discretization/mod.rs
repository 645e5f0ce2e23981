//! Conforming flux/pressure spaces on a uniform square mesh: DOF layout, the
//! incidence matrix `E^{2,1}` and the mass matrices `M^(1)`, `M^(2)`.

mod incidence;
mod layout;
mod mass;
mod reconstruct;

pub use incidence::{divergence_coefficients, incidence_matrix, IncidenceMatrix};
pub use layout::{build_layout, DofLayout};
pub use mass::{flux_mass_matrix, mass_quadrature_degree, volume_mass_matrix, MassMatrices};
pub use reconstruct::FluxField;
