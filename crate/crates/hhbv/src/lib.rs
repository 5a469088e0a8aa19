//! Hochschild cohomology of group rings of finitely generated abelian groups,
//! with cup product, Gerstenhaber bracket and BV operator, all in exact arithmetic.

pub mod bar_complex;
pub mod bv_engine;
pub mod chain_complex;
pub mod checks;
pub mod coeff;
pub mod comparison;
pub mod error;
pub mod group_ring;
pub mod presentations;
pub mod small_resolutions;

pub use error::{Error, Result};
