//! Exact linear algebra over truncated power series and the spectrum
//! pipeline.

pub mod jacobian;

pub use jacobian::{JacobianData, JacobianError};
