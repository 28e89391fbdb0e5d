//! Finite simplicial sets, simplicially enriched categories and their
//! nerves, with small executable models of localization: resolutions,
//! homotopy coherent nerves, free groupoids on simplicial sets, hammocks
//! and Segal-style weak structures.

pub mod bisset;
pub mod dk;
pub mod doc;
pub mod error;
pub mod fincat;
pub mod gamma;
pub mod hammock;
pub mod hcnerve;
pub mod nerve;
pub mod nsset;
pub mod quasi;
pub mod report;
pub mod resolution;
pub mod scat;
pub mod simplicial;
pub mod sordinal;
pub mod smap;

pub use error::{Budget, Error, Result};
pub use simplicial::{SSet, SimplexRef};
pub use smap::SMap;
