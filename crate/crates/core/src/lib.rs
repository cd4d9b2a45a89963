//! Exact computations for the hyperbolic Kac-Moody algebra E10 realised in
//! hermitian octonion matrices, its Borcherds-product correction, and the
//! companion rank-3 and rank-2 algebras.

pub mod borcherds;
mod combinat;
pub mod error;
mod linalg;
pub mod lattice;
pub mod octonion;
pub mod qseries;
pub mod rank2;
pub mod rank3;

pub use error::{Error, Result};
pub use lattice::{HermMatrix, LatticeVector, WeylWord};
pub use octonion::{OctavianCoords, Octonion};
pub use qseries::PowerSeries;
