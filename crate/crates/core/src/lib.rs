//! Exact Γ-sector decompositions and Γ-spectra of quotient orbifolds.

pub mod error;
pub mod exactnum;
pub mod finite_group;
pub mod flat_orbifold;
pub mod gamma_hom;
pub mod orthogonal_action;
pub mod sectors;
pub mod sphere_spectrum;
pub mod sunada;

pub use error::{Error, Result};
