//! Commutative hypercomplex number systems in n dimensions.
//!
//! Polar and planar n-complex algebras plus the circular and hyperbolic
//! fourcomplex systems: arithmetic, spectral decomposition, cosexponential
//! functions, elementary functions, polynomial factorization, contour
//! integration and matrix representations.

pub mod algebra;
pub mod analysis;
pub mod cosexp;
pub mod error;
pub mod functions;
pub mod matrep;
pub mod polyfactor;
pub mod spectral;

#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::{close, AlgebraSpec, Kind, NComplex, UnitProduct, DEFAULT_TOL, MAX_N};
pub use error::{Component, Error, Result};
pub use spectral::{SpectralForm, SpectralLayout};
