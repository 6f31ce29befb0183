//! Exact-arithmetic cyclic complexes of Z/2-graded dg algebras, the
//! canonical connections in the disk parameter `u` on them, and the
//! twisted de Rham side for isolated polynomial singularities: Koszul-sign
//! operator calculus, homotopy-certificate verification, Smith reduction
//! over truncated power series, and singularity spectra.

pub mod cyclic;
pub mod homology;
pub mod mf;
pub mod scalars;
pub mod superalg;
pub mod uconn;

pub use cyclic::{Chain, Ctx, Op, Sector, Word};
pub use scalars::{Q, Series};
pub use superalg::SuperAlgebra;
