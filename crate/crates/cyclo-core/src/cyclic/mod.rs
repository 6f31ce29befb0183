//! Chain spaces of the cyclic complexes, the operator calculus with exact
//! Koszul signs, and the exhaustive identity-verification engine.

pub mod engine;
pub mod ops;
pub mod suites;
pub mod word;

pub use engine::{run_suite, run_suite_jobs, Identity, IdentityReport, Outcome, Status, SuiteReport, WordDomain};
pub use ops::{Ctx, EvalError, Gen, Op};
pub use suites::{anticomm, apply_connes, apply_connes_e, apply_phi, comm, supercomm};
pub use word::{ApplyResult, Chain, Sector, Word, HEAD_E};

#[cfg(test)]
mod tests;
