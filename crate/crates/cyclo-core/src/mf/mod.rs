//! The matrix-factorization pipeline: the Koszul-type dg algebra of a
//! polynomial with its decomposition, the insertion operators, the
//! supertrace and antisymmetrization maps to the twisted de Rham complex,
//! and the connection comparison down to that side.

pub mod alg;
pub mod form;
pub mod maps;
pub mod poly;
pub mod suites;

pub use alg::{validate_w, MfAlgebra, MfError, PolyDecomposition};
pub use form::{nabla_w, twisted_diff, Form, FormSeries};
pub use maps::{composite_to_derham, hkr_eps, supertrace};
pub use poly::{Poly, PolyError};
pub use suites::{
    bdw_op, bw_poly_op, bw_tensor_op, check_form_homotopy, d_w_total, nabla_flat, nabla_sharp,
    suite_composite_chain_map, suite_conjugation_brackets, suite_eps_intertwining,
    suite_insertion_brackets, suite_trace_intertwining, twisted_trade_certificate,
    verify_composite_residual, u_w_op, v_w_op,
};

#[cfg(test)]
pub mod tests;
