//! The homotopy-certificate catalog and its verifier.
//!
//! A certificate names a u-operator claimed nullhomotopic (the residual) and
//! ships the explicit odd witness: the verifier checks
//! `residual = D∘witness + witness∘D` exactly on every enumerated word.

use serde::Serialize;

use crate::cyclic::engine::{IdentityReport, Status, SuiteReport, WordDomain};
use crate::cyclic::{Ctx, EvalError, Gen, Op, Sector};
use crate::scalars::Q;
use crate::superalg::SuperAlgebra;

use super::connections::*;
use super::uop::{anticommutator, connection_law_defect, gauge_transfer_op, UOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Complex {
    /// (C(A), b, B) — plain sector, unital algebras.
    PlainUnital,
    /// (Cᵉ(A), bᵉ, Bᵉ) — extended sector.
    Extended,
}

/// A residual together with its explicit nullhomotopy witness.
pub struct ChainCertificate {
    pub name: String,
    pub residual: UOp,
    pub witness: UOp,
    pub complex: Complex,
    /// Enumerate inputs from this sector (the map may still pass through
    /// the other one).
    pub domain_sector: Sector,
}

impl ChainCertificate {
    fn differential(&self) -> UOp {
        match self.complex {
            Complex::PlainUnital => d_plain(),
            Complex::Extended => d_ce(),
        }
    }
}

/// Verify `residual = [D, witness]` exactly on all basis words up to the
/// domain's length bound; overflowed inputs are excluded and counted.
pub fn verify_chain_certificate(
    cert: &ChainCertificate,
    alg: &SuperAlgebra,
    max_len: usize,
    cap: usize,
) -> Result<SuiteReport, EvalError> {
    let d = cert.differential();
    let rhs = anticommutator(&d, &cert.witness);
    let domain = WordDomain::new(cert.domain_sector, max_len);
    verify_uop_equality(&cert.name, &cert.residual, &rhs, alg, &domain, cap)
}

/// Verify two u-operators agree on every certified basis word.
pub fn verify_uop_equality(
    name: &str,
    lhs: &UOp,
    rhs: &UOp,
    alg: &SuperAlgebra,
    domain: &WordDomain,
    cap: usize,
) -> Result<SuiteReport, EvalError> {
    // evaluation may pass through the extended sector even when inputs are
    // plain words, so the context is always the extended one
    let ctx = Ctx::new(alg, Sector::Ce, cap);
    let mut checked = 0u64;
    let mut certified = 0u64;
    let mut counterexample = None;
    let mut err = None;
    domain.for_each(alg, |w| {
        if err.is_some() || counterexample.is_some() {
            return;
        }
        checked += 1;
        let l = match lhs.apply_to_word(w, &ctx) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        let r = match rhs.apply_to_word(w, &ctx) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        if l.overflow || r.overflow {
            return;
        }
        certified += 1;
        if l.sub(&r).is_zero() {
            return;
        }
        counterexample = Some(format!("{}: lhs = {}, rhs = {}", w.format(alg), l.format(alg), r.format(alg)));
    });
    if let Some(e) = err {
        return Err(e);
    }
    let status = if counterexample.is_some() { Status::Fail } else { Status::Pass };
    Ok(SuiteReport {
        suite: name.into(),
        algebra: alg.name.clone(),
        max_length: domain.max_len,
        identities: vec![IdentityReport { name: name.into(), checked, certified, status, counterexample }],
    })
}

/// Verify the connection law `[∇, b+uB] = (1/2u)(b+uB)` for a coefficient
/// operator on the given complex.
pub fn verify_connection_law(
    name: &str,
    a: &UOp,
    complex: Complex,
    alg: &SuperAlgebra,
    sector: Sector,
    max_len: usize,
    cap: usize,
) -> Result<SuiteReport, EvalError> {
    let d = match complex {
        Complex::PlainUnital => d_plain(),
        Complex::Extended => d_ce(),
    };
    let defect = connection_law_defect(a, &d);
    let domain = WordDomain::new(sector, max_len);
    verify_uop_equality(name, &defect, &UOp::zero(), alg, &domain, cap)
}

/// Connection law against an arbitrary totalized differential.
pub fn verify_connection_law_with(
    name: &str,
    a: &UOp,
    d: &UOp,
    alg: &SuperAlgebra,
    domain: &WordDomain,
    cap: usize,
) -> Result<SuiteReport, EvalError> {
    let defect = connection_law_defect(a, d);
    verify_uop_equality(name, &defect, &UOp::zero(), alg, domain, cap)
}

/// Certificate check against an arbitrary totalized differential.
pub fn verify_certificate_with(
    name: &str,
    residual: &UOp,
    witness: &UOp,
    d: &UOp,
    alg: &SuperAlgebra,
    domain: &WordDomain,
    cap: usize,
) -> Result<SuiteReport, EvalError> {
    let rhs = anticommutator(d, witness);
    verify_uop_equality(name, residual, &rhs, alg, domain, cap)
}

/// 2u²(∇ - ∇°) = [bᵉ+uBᵉ, K] with
/// K = (δ^(0) - δ^(0)N) on the plain column + δ^(0) on the e-headed column.
pub fn cert_dual_pair() -> ChainCertificate {
    let residual = nabla()
        .add(&nabla_circ().neg())
        .shift(2)
        .scale(&Q::from_int(2));
    let k_op = Op::sum(vec![
        Op::comp(vec![
            Op::sum(vec![Op::delta(0), Op::comp(vec![Op::delta(0), Op::Gen(Gen::NSum)]).neg()]),
            Op::Gen(Gen::ProjC),
        ]),
        Op::comp(vec![Op::delta(0), Op::Gen(Gen::ProjPlus)]),
    ]);
    ChainCertificate {
        name: "dual-pair".into(),
        residual,
        witness: UOp::from_op(0, k_op),
        complex: Complex::Extended,
        domain_sector: Sector::Ce,
    }
}

/// 2u²(∇̃ - ∇) = [bᵉ+uBᵉ, H₀ + uH₁] with H₀ = μ^(0) (both columns) and
/// H₁ = hᵉ N' on the plain column.
pub fn cert_alternate_pair() -> ChainCertificate {
    let residual = nabla_tilde().add(&nabla().neg()).shift(2).scale(&Q::from_int(2));
    let h0 = Op::mu(0);
    let h1 = Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::NPrime), Op::Gen(Gen::ProjC)]);
    ChainCertificate {
        name: "alternate-pair".into(),
        residual,
        witness: UOp::from_op(0, h0).add(&UOp::from_op(1, h1)),
        complex: Complex::Extended,
        domain_sector: Sector::Ce,
    }
}

/// 2u²(∇_gr - ∇) = [bᵉ+uBᵉ, Ĥ₀ + uĤ₁] with Ĥ₀ = μ^(0) γ^(1) and
/// Ĥ₁ = hᵉ ΣΣ τ^j γ^(i) on the plain column.  Z-graded algebras only.
pub fn cert_grading_pair() -> ChainCertificate {
    let residual = nabla_gr().add(&nabla().neg()).shift(2).scale(&Q::from_int(2));
    let h0 = Op::comp(vec![Op::mu(0), Op::Gen(Gen::GammaI(1))]);
    let h1 = Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::VSumGamma), Op::Gen(Gen::ProjC)]);
    ChainCertificate {
        name: "grading-pair".into(),
        residual,
        witness: UOp::from_op(0, h0).add(&UOp::from_op(1, h1)),
        complex: Complex::Extended,
        domain_sector: Sector::Ce,
    }
}

/// The assembled certificate for the transfer of the extended-complex
/// connection along (ι, p, H) against the unital-complex form:
///   gauge(∇) - ∇_plain = [b + uB, (1-τ^{-1}) h h h N ∘ Γ].
/// Inputs are plain words; evaluation passes through the extended sector.
pub fn cert_transfer_assembled() -> ChainCertificate {
    let gauge = gauge_transfer_op(&nabla(), &iota_u(), &p_u(), &h_u(), &d_plain());
    let residual = gauge.add(&nabla_un().neg());
    let witness = UOp::from_op(
        0,
        Op::comp(vec![
            Op::one_minus_tau_inv(),
            Op::Gen(Gen::H),
            Op::Gen(Gen::H),
            Op::Gen(Gen::H),
            Op::Gen(Gen::NSum),
            Op::Gen(Gen::Gamma),
        ]),
    );
    ChainCertificate {
        name: "transfer-assembled".into(),
        residual,
        witness,
        complex: Complex::PlainUnital,
        domain_sector: Sector::Plain,
    }
}

/// The coefficient-operator bracket laws behind the extended connection:
/// brackets of U°/V°/Γ with the differential parts.
pub fn suite_uv_brackets() -> Vec<crate::cyclic::Identity> {
    use crate::cyclic::suites::comm;
    use crate::cyclic::Identity;
    let bd = Op::Gen(Gen::BDelta);
    let bm = Op::Gen(Gen::BMu);
    let be = Op::b_connes_e();
    let gamma = Op::Gen(Gen::Gamma);
    vec![
        Identity::pair("u-circ-bdelta", comm(u_delta_circ(), bd.clone()), Op::Zero),
        Identity::pair("u-circ-bmu", comm(u_delta_circ(), bm.clone()), Op::Zero),
        Identity::pair("v-circ-connes", comm(v_delta_circ(), be.clone()), Op::Zero),
        Identity::pair("v-circ-bdelta", comm(v_delta_circ(), bd.clone()), Op::Zero),
        Identity::pair(
            "v-circ-bmu-plus-u-circ-connes",
            Op::sum(vec![comm(v_delta_circ(), bm.clone()), comm(u_delta_circ(), be.clone())]),
            bd.clone().scale(Q::new(1, 2)),
        ),
        Identity::pair("gamma-bdelta", comm(gamma.clone(), bd), Op::Zero),
        Identity::pair("gamma-bmu", comm(gamma.clone(), bm.clone()), bm.scale(Q::new(1, 2))),
        Identity::pair("gamma-connes", comm(gamma, be.clone()), be.scale(Q::new(-1, 2))),
    ]
}
