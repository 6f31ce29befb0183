//! Coefficient layer: exact rationals and truncated Laurent series in `u`.

pub mod q;
pub mod series;

pub use q::{q, qi, Q};
pub use series::{Series, SeriesError, PREC_EXACT};
