//! The canonical connections on the cyclic complexes: coefficient operators
//! for the extended complex, its dual and alternate forms, the unital-сomplex
//! version, and the grading connection for Z-graded algebras.

use crate::cyclic::{Gen, Op};
use crate::scalars::Q;

use super::uop::UOp;

fn half() -> Q {
    Q::new(1, 2)
}

fn neg_half() -> Q {
    Q::new(-1, 2)
}

/// U(δ) = -½ μ^(0) δ^(1) on both columns.
pub fn u_delta() -> Op {
    Op::comp(vec![Op::mu(0), Op::delta(1)]).scale(neg_half())
}

/// V(δ) = -½ hᵉ Σ_{i=1..n} Σ_{j=i+1..n+1} τ^j δ^(i), on the plain column.
pub fn v_delta() -> Op {
    Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::VSumDelta), Op::Gen(Gen::ProjC)]).scale(neg_half())
}

/// U°(δ) = ½ μ^(n) δ^(n).
pub fn u_delta_circ() -> Op {
    Op::comp(vec![Op::Gen(Gen::MuStar), Op::Gen(Gen::DeltaStar)]).scale(half())
}

/// V°(δ) = ½ hᵉ Σ_{i=1..n} Σ_{j=1..i} τ^j δ^(i), on the plain column.
pub fn v_delta_circ() -> Op {
    Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::VSumDeltaCirc), Op::Gen(Gen::ProjC)]).scale(half())
}

/// U(μ) = -½ μ^(0) μ^(1).
pub fn u_mu() -> Op {
    Op::comp(vec![Op::mu(0), Op::mu(1)]).scale(neg_half())
}

/// V(μ) = ½ id on the plain column - ½ hᵉ Σ_{i=1..n-1} Σ_{j=i+1..n} τ^j μ^(i).
pub fn v_mu() -> Op {
    Op::sum(vec![
        Op::Gen(Gen::ProjC).scale(half()),
        Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::VSumMu), Op::Gen(Gen::ProjC)]).scale(neg_half()),
    ])
}

/// Coefficient operator of the canonical connection on the extended complex:
///   A(u) = U(δ)/u² + (V(δ) + Γ)/u.
pub fn nabla() -> UOp {
    UOp::from_op(-2, u_delta()).add(&UOp::from_op(-1, Op::sum(vec![v_delta(), Op::Gen(Gen::Gamma)])))
}

/// The dual form: A°(u) = U°(δ)/u² + (V°(δ) + Γ)/u.
pub fn nabla_circ() -> UOp {
    UOp::from_op(-2, u_delta_circ())
        .add(&UOp::from_op(-1, Op::sum(vec![v_delta_circ(), Op::Gen(Gen::Gamma)])))
}

/// The alternate form: Ã(u) = (U(δ)+U(μ))/u² + (V(δ)+V(μ))/u.
pub fn nabla_tilde() -> UOp {
    UOp::from_op(-2, Op::sum(vec![u_delta(), u_mu()]))
        .add(&UOp::from_op(-1, Op::sum(vec![v_delta(), v_mu()])))
}

/// U(δ) for the plain unital complex (same formula, no column split).
pub fn u_delta_un() -> Op {
    Op::comp(vec![Op::mu(0), Op::delta(1)]).scale(neg_half())
}

/// V(δ) for the plain unital complex: -½ (1-τ^{-1}) h Σ Σ τ^j δ^(i).
pub fn v_delta_un() -> Op {
    Op::comp(vec![Op::one_minus_tau_inv(), Op::Gen(Gen::H), Op::Gen(Gen::VSumDelta)]).scale(neg_half())
}

/// W(δ) for the plain unital complex: ½ (1-τ^{-1}) h h h N b(δ).
pub fn w_delta_un() -> Op {
    Op::comp(vec![
        Op::one_minus_tau_inv(),
        Op::Gen(Gen::H),
        Op::Gen(Gen::H),
        Op::Gen(Gen::H),
        Op::Gen(Gen::NSum),
        Op::Gen(Gen::BDelta),
    ])
    .scale(half())
}

/// Coefficient operator of the connection on the plain unital complex:
///   A(u) = U(δ)/u² + (V(δ) + Γ)/u + W(δ).
pub fn nabla_un() -> UOp {
    UOp::from_op(-2, u_delta_un())
        .add(&UOp::from_op(-1, Op::sum(vec![v_delta_un(), Op::Gen(Gen::Gamma)])))
        .add(&UOp::from_op(0, w_delta_un()))
}

/// The grading connection for Z-graded algebras: A(u) = Γ'/(2u).
pub fn nabla_gr() -> UOp {
    UOp::from_op(-1, Op::Gen(Gen::GammaPrime).scale(half()))
}

/// The totalized differential of the plain unital complex: b + uB.
pub fn d_plain() -> UOp {
    super::uop::totalized(Op::hochschild(), Op::b_connes())
}

/// The totalized differential of the extended complex: bᵉ + uBᵉ.
pub fn d_ce() -> UOp {
    super::uop::totalized(Op::hochschild(), Op::b_connes_e())
}

/// The section ι(u): plain complex -> extended complex.
pub fn iota_u() -> UOp {
    UOp::from_op(0, Op::id()).add(&UOp::from_op(
        1,
        Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::H), Op::Gen(Gen::NSum)]),
    ))
}

/// The retraction p(u): extended complex -> plain complex.
pub fn p_u() -> UOp {
    UOp::from_op(
        0,
        Op::sum(vec![
            Op::Gen(Gen::ProjC),
            Op::comp(vec![Op::one_minus_tau_inv(), Op::Gen(Gen::H), Op::mu(0), Op::Gen(Gen::ProjPlus)]),
        ]),
    )
}

/// The homotopy H(u) = u (1-τ^{-1}) h h h N on the plain complex.
pub fn h_u() -> UOp {
    UOp::from_op(
        1,
        Op::comp(vec![
            Op::one_minus_tau_inv(),
            Op::Gen(Gen::H),
            Op::Gen(Gen::H),
            Op::Gen(Gen::H),
            Op::Gen(Gen::NSum),
        ]),
    )
}

/// The homotopy Hᵉ = hᵉ h μ^(0) on the e-headed column of the extended
/// complex.
pub fn h_e_u() -> UOp {
    UOp::from_op(
        0,
        Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::H), Op::mu(0), Op::Gen(Gen::ProjPlus)]),
    )
}
