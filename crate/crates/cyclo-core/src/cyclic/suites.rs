//! The named identity suites: exchange laws between the cyclic rotation,
//! the differential/multiplication families, the norm operators and the
//! unit insertions, plus the word-reversal duality and the insertion
//! calculus. Each suite is a list of `Identity` values for `run_suite`.

use std::sync::Arc;

use crate::scalars::Q;
use crate::superalg::{Elem, SuperAlgebra};

use super::engine::{outcome_of, Identity, Outcome};
use super::ops::{Ctx, EvalError, Gen, Op};
use super::word::{ApplyResult, Chain, Word};

/// a∘b + b∘a.
pub fn anticomm(a: Op, b: Op) -> Op {
    Op::sum(vec![Op::comp(vec![a.clone(), b.clone()]), Op::comp(vec![b, a])])
}

/// a∘b - b∘a.
pub fn comm(a: Op, b: Op) -> Op {
    Op::sum(vec![Op::comp(vec![a.clone(), b.clone()]), Op::comp(vec![b, a]).neg()])
}

/// a∘b - (-1)^{pa·pb} b∘a.
pub fn supercomm(a: Op, pa: u8, b: Op, pb: u8) -> Op {
    if pa & pb == 1 {
        anticomm(a, b)
    } else {
        comm(a, b)
    }
}

fn ev(op: &Op, w: &Word, ctx: &Ctx) -> Result<ApplyResult, EvalError> {
    op.apply_to_word(w, ctx)
}

fn vacuous() -> Outcome {
    Outcome::Certified { equal: true, lhs: Chain::zero(), rhs: Chain::zero() }
}

/// Exchange laws between τ and the δ/μ families.
pub fn suite_b1(max_len: usize) -> Vec<Identity> {
    let mut ids = Vec::new();
    // δ^(k) τ^j = τ^j δ^(k+j), uniform thanks to the periodic δ-family.
    for k in 0..=max_len {
        for j in 1..=max_len + 1 {
            ids.push(Identity::pair(
                format!("delta-tau k={k} j={j}"),
                Op::comp(vec![Op::delta(k), Op::tau(j as i64)]),
                Op::comp(vec![Op::tau(j as i64), Op::delta(k + j)]),
            ));
        }
    }
    // μ^(k) τ^j with the wrap-around branch.
    ids.push(Identity::custom("mu-tau exchange", |ctx, w| {
        let t = w.len();
        if t == 0 {
            return Ok(vacuous());
        }
        for k in 0..=t {
            for j in 1..=t + 1 {
                let l = ev(&Op::comp(vec![Op::mu(k), Op::tau(j as i64)]), w, ctx)?;
                let r = if k + j <= t {
                    ev(&Op::comp(vec![Op::tau(j as i64), Op::mu(k + j)]), w, ctx)?
                } else {
                    ev(&Op::comp(vec![Op::tau(j as i64 - 1), Op::mu(k + j - t - 1)]), w, ctx)?
                };
                if l.overflow || r.overflow {
                    return Ok(Outcome::Uncertified);
                }
                if l.chain != r.chain {
                    return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                }
            }
        }
        Ok(vacuous())
    }));
    let b_mu = Op::Gen(Gen::BMu);
    let mu0 = Op::mu(0);
    let mu_star = Op::Gen(Gen::MuStar);
    // b(δ) τ = τ b(δ)
    ids.push(Identity::pair(
        "bdelta-tau",
        Op::comp(vec![Op::Gen(Gen::BDelta), Op::tau(1)]),
        Op::comp(vec![Op::tau(1), Op::Gen(Gen::BDelta)]),
    ));
    // (b(μ) - μ^(*)) τ = τ (b(μ) - μ^(0))
    ids.push(Identity::pair(
        "bmu-tau",
        Op::comp(vec![Op::sum(vec![b_mu.clone(), mu_star.clone().neg()]), Op::tau(1)]),
        Op::comp(vec![Op::tau(1), Op::sum(vec![b_mu.clone(), mu0.clone().neg()])]),
    ));
    // b(μ)(1 - τ) = (1 - τ)(b(μ) - μ^(0))
    let one_minus_tau = Op::sum(vec![Op::id(), Op::tau(1).neg()]);
    ids.push(Identity::pair(
        "bmu-one-minus-tau",
        Op::comp(vec![b_mu.clone(), one_minus_tau.clone()]),
        Op::comp(vec![one_minus_tau, Op::sum(vec![b_mu.clone(), mu0.neg()])]),
    ));
    // (b(μ) - μ^(*)) N = N b(μ)
    ids.push(Identity::pair(
        "bmu-norm",
        Op::comp(vec![Op::sum(vec![b_mu.clone(), mu_star.neg()]), Op::Gen(Gen::NSum)]),
        Op::comp(vec![Op::Gen(Gen::NSum), b_mu]),
    ));
    ids
}

/// Anticommutation laws inside the δ and μ families.
pub fn suite_b2(max_len: usize) -> Vec<Identity> {
    let mut ids = Vec::new();
    for i in 0..=max_len {
        for j in 0..=max_len {
            ids.push(Identity::pair(
                format!("delta-delta i={i} j={j}"),
                Op::comp(vec![Op::delta(i), Op::delta(j)]),
                Op::comp(vec![Op::delta(j), Op::delta(i)]).neg(),
            ));
        }
    }
    ids.push(Identity::custom("mu-mu anticommute", |ctx, w| {
        let t = w.len();
        if t < 2 {
            return Ok(vacuous());
        }
        // μ^(i) μ^(j) = -μ^(j) μ^(i+1) for j <= i <= t-1
        for i in 0..=t - 1 {
            for j in 0..=i {
                let l = ev(&Op::comp(vec![Op::mu(i), Op::mu(j)]), w, ctx)?;
                let r = ev(&Op::comp(vec![Op::mu(j), Op::mu(i + 1)]).neg(), w, ctx)?;
                if l.overflow || r.overflow {
                    return Ok(Outcome::Uncertified);
                }
                if l.chain != r.chain {
                    return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                }
            }
        }
        Ok(vacuous())
    }));
    ids.push(Identity::custom("delta-mu exchange", |ctx, w| {
        let t = w.len();
        if t == 0 {
            return Ok(vacuous());
        }
        // δ^(i) on length t-1 composed with μ^(j) on length t
        for i in 0..=t {
            for j in 0..=t {
                let l = ev(&Op::comp(vec![Op::delta(i), Op::mu(j)]), w, ctx)?;
                let rhs_op = if i == j {
                    // -μ^(i) δ^(i+1) - μ^(i) δ^(i)
                    Op::sum(vec![
                        Op::comp(vec![Op::mu(i), Op::delta(i + 1)]).neg(),
                        Op::comp(vec![Op::mu(i), Op::delta(i)]).neg(),
                    ])
                } else if j < i && i <= t - 1 {
                    Op::comp(vec![Op::mu(j), Op::delta(i + 1)]).neg()
                } else if i < j && j <= t - 1 {
                    Op::comp(vec![Op::mu(j), Op::delta(i)]).neg()
                } else if j == t && i >= 1 && i <= t - 1 {
                    Op::comp(vec![Op::mu(t), Op::delta(i)]).neg()
                } else {
                    continue;
                };
                let r = ev(&rhs_op, w, ctx)?;
                if l.overflow || r.overflow {
                    return Ok(Outcome::Uncertified);
                }
                if l.chain != r.chain {
                    return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                }
            }
        }
        Ok(vacuous())
    }));
    ids
}

/// b(δ) anticommutes with every δ^(i) and μ^(i).
pub fn suite_b3(max_len: usize) -> Vec<Identity> {
    let mut ids = Vec::new();
    for i in 0..=max_len {
        ids.push(Identity::pair(
            format!("bdelta-delta i={i}"),
            Op::comp(vec![Op::Gen(Gen::BDelta), Op::delta(i)]),
            Op::comp(vec![Op::delta(i), Op::Gen(Gen::BDelta)]).neg(),
        ));
        ids.push(Identity::pair(
            format!("bdelta-mu i={i}"),
            Op::comp(vec![Op::Gen(Gen::BDelta), Op::mu(i)]),
            Op::comp(vec![Op::mu(i), Op::Gen(Gen::BDelta)]).neg(),
        ));
    }
    ids
}

/// Interaction of the families with the unit prepender (run over the
/// unitalized algebra in the plain sector, where `He` is an honest letter).
pub fn suite_b4() -> Vec<Identity> {
    let he = Op::Gen(Gen::He);
    let mut ids = Vec::new();
    ids.push(Identity::pair(
        "delta0-he",
        Op::comp(vec![Op::delta(0), he.clone()]),
        Op::Zero,
    ));
    ids.push(Identity::custom("delta-he shift", |ctx, w| {
        let t = w.len();
        let he = Op::Gen(Gen::He);
        for i in 1..=t + 1 {
            let l = ev(&Op::comp(vec![Op::delta(i), he.clone()]), w, ctx)?;
            let r = ev(&Op::comp(vec![he.clone(), Op::delta(i - 1)]).neg(), w, ctx)?;
            if l.overflow || r.overflow {
                return Ok(Outcome::Uncertified);
            }
            if l.chain != r.chain {
                return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
            }
        }
        Ok(vacuous())
    }));
    ids.push(Identity::pair("mu0-he", Op::comp(vec![Op::mu(0), he.clone()]), Op::id()));
    ids.push(Identity::custom("mu-he shift", |ctx, w| {
        let t = w.len();
        let he = Op::Gen(Gen::He);
        for i in 1..=t {
            let l = ev(&Op::comp(vec![Op::mu(i), he.clone()]), w, ctx)?;
            let r = ev(&Op::comp(vec![he.clone(), Op::mu(i - 1)]).neg(), w, ctx)?;
            if l.overflow || r.overflow {
                return Ok(Outcome::Uncertified);
            }
            if l.chain != r.chain {
                return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
            }
        }
        Ok(vacuous())
    }));
    ids.push(Identity::pair(
        "mustar-he",
        Op::comp(vec![Op::Gen(Gen::MuStar), he]),
        Op::tau(-1).neg(),
    ));
    ids
}

/// The aggregated unit-prepender laws.
pub fn suite_b5() -> Vec<Identity> {
    let he = Op::Gen(Gen::He);
    vec![
        Identity::pair(
            "bdelta-he",
            Op::comp(vec![Op::Gen(Gen::BDelta), he.clone()]),
            Op::comp(vec![he.clone(), Op::Gen(Gen::BDelta)]).neg(),
        ),
        Identity::pair(
            "bvmu-he",
            Op::comp(vec![Op::Gen(Gen::BvMu), he.clone()]),
            Op::one_minus_tau_inv(),
        ),
        Identity::pair(
            "bhmu-he",
            Op::comp(vec![Op::Gen(Gen::BhMu), he.clone()]),
            Op::comp(vec![he, Op::sum(vec![Op::mu(0), Op::Gen(Gen::BhMu)])]).neg(),
        ),
    ]
}

/// τ-period and the squares/anticommutators of the differentials.
/// `unital` adds the laws that need the degree-raising differential.
pub fn suite_squares_plain(unital: bool) -> Vec<Identity> {
    let mut ids = vec![
        Identity::custom("tau-period", |ctx, w| {
            let r = ev(&Op::tau(w.len() as i64 + 1), w, ctx)?;
            if r.overflow {
                return Ok(Outcome::Uncertified);
            }
            let id_chain = Chain::of_word(w.clone());
            Ok(Outcome::Certified { equal: r.chain == id_chain, lhs: r.chain, rhs: id_chain })
        }),
        Identity::pair("b-squared", Op::comp(vec![Op::hochschild(), Op::hochschild()]), Op::Zero),
    ];
    if unital {
        ids.push(Identity::pair(
            "connes-squared",
            Op::comp(vec![Op::b_connes(), Op::b_connes()]),
            Op::Zero,
        ));
        ids.push(Identity::pair("b-anticommutes-connes", anticomm(Op::hochschild(), Op::b_connes()), Op::Zero));
    }
    ids
}

/// Same laws on the extended (normalized) complex.
pub fn suite_squares_ce() -> Vec<Identity> {
    vec![
        Identity::pair("be-squared", Op::comp(vec![Op::hochschild(), Op::hochschild()]), Op::Zero),
        Identity::pair(
            "connes-e-squared",
            Op::comp(vec![Op::b_connes_e(), Op::b_connes_e()]),
            Op::Zero,
        ),
        Identity::pair(
            "be-anticommutes-connes-e",
            anticomm(Op::hochschild(), Op::b_connes_e()),
            Op::Zero,
        ),
    ]
}

/// (1 - τ^{-1}) N' = -N - 2Γ + 1.
pub fn suite_nprime() -> Vec<Identity> {
    vec![Identity::pair(
        "weighted-norm",
        Op::comp(vec![Op::one_minus_tau_inv(), Op::Gen(Gen::NPrime)]),
        Op::sum(vec![
            Op::Gen(Gen::NSum).neg(),
            Op::Gen(Gen::Gamma).scale(Q::from_int(-2)),
            Op::id(),
        ]),
    )]
}

/// Word reversal with its sign: `a0[a1|..|an] -> ± a0[an|..|a1]`, viewed in
/// the opposite algebra. Returns the image chain.
pub fn apply_phi(x: &Chain, alg: &SuperAlgebra) -> Chain {
    let mut terms = Vec::with_capacity(x.terms().len());
    for (w, c) in x.terms() {
        let n = w.len();
        let odd_s = w.tail.iter().filter(|i| alg.parity(**i) == 0).count();
        // (-1)^{n + C(odd_s, 2)}
        let exp = (n + odd_s * (odd_s.saturating_sub(1)) / 2) % 2;
        let mut tail = w.tail.clone();
        tail.reverse();
        let coef = if exp == 1 { -c } else { c.clone() };
        terms.push((Word { head: w.head, tail }, coef));
    }
    Chain::from_terms(terms)
}

/// The duality suite: exchange laws of the reversal with every structure
/// map, and the mixed-complex isomorphism onto the opposite algebra.
pub fn suite_phi(alg: &SuperAlgebra, cap: usize) -> Vec<Identity> {
    let op_alg = Arc::new(alg.opposite());
    // the rotation-involving exchange laws live on the non-e-headed part
    let mk = |name: &str,
              skip_e: bool,
              lhs: Box<dyn Fn(&Ctx, &Ctx, &Word) -> Result<ApplyResult, EvalError> + Send + Sync>,
              rhs: Box<dyn Fn(&Ctx, &Ctx, &Word) -> Result<ApplyResult, EvalError> + Send + Sync>| {
        let op_alg = op_alg.clone();
        Identity::custom(name.to_string(), move |ctx, w| {
            if skip_e && w.is_e_headed() {
                return Ok(Outcome::Certified { equal: true, lhs: Chain::zero(), rhs: Chain::zero() });
            }
            let op_ctx = Ctx::new(&op_alg, ctx.sector, cap);
            let l = lhs(ctx, &op_ctx, w)?;
            let r = rhs(ctx, &op_ctx, w)?;
            Ok(outcome_of(l, r))
        })
    };
    let apply_then_phi = |op: Op| {
        move |ctx: &Ctx, _op_ctx: &Ctx, w: &Word| -> Result<ApplyResult, EvalError> {
            let r = op.apply_to_word(w, ctx)?;
            Ok(ApplyResult { chain: apply_phi(&r.chain, ctx.alg), overflow: r.overflow })
        }
    };
    let phi_then_apply = |op: Op| {
        move |ctx: &Ctx, op_ctx: &Ctx, w: &Word| -> Result<ApplyResult, EvalError> {
            let p = apply_phi(&Chain::of_word(w.clone()), ctx.alg);
            op.apply(&p, op_ctx)
        }
    };
    let mut ids = Vec::new();
    ids.push(mk(
        "phi-tau",
        true,
        Box::new(apply_then_phi(Op::tau(1))),
        Box::new(phi_then_apply(Op::tau(-1))),
    ));
    ids.push(mk(
        "phi-delta0",
        false,
        Box::new(apply_then_phi(Op::delta(0))),
        Box::new(phi_then_apply(Op::delta(0))),
    ));
    ids.push(mk(
        "phi-mu0",
        true,
        Box::new(apply_then_phi(Op::mu(0))),
        Box::new(phi_then_apply(Op::comp(vec![Op::mu(0), Op::tau(-1)]))),
    ));
    ids.push(mk(
        "phi-he",
        true,
        Box::new(apply_then_phi(Op::Gen(Gen::He))),
        Box::new(phi_then_apply(Op::comp(vec![Op::Gen(Gen::He), Op::tau(1)]).neg())),
    ));
    ids.push(mk(
        "phi-norm",
        true,
        Box::new(apply_then_phi(Op::Gen(Gen::NSum))),
        Box::new(phi_then_apply(Op::Gen(Gen::NSum))),
    ));
    // indexed versions: Φ δ^(i) = δ^(n+1-i) Φ, Φ μ^(i) = μ^(n-i) Φ
    {
        let op_alg = op_alg.clone();
        ids.push(Identity::custom("phi-delta-i", move |ctx, w| {
            let t = w.len();
            let op_ctx = Ctx::new(&op_alg, ctx.sector, cap);
            for i in 0..=t {
                let l = {
                    let r = Op::delta(i).apply_to_word(w, ctx)?;
                    ApplyResult { chain: apply_phi(&r.chain, ctx.alg), overflow: r.overflow }
                };
                let p = apply_phi(&Chain::of_word(w.clone()), ctx.alg);
                let r = Op::delta(t + 1 - i).apply(&p, &op_ctx)?;
                if l.overflow || r.overflow {
                    return Ok(Outcome::Uncertified);
                }
                if l.chain != r.chain {
                    return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                }
            }
            Ok(vacuous())
        }));
    }
    {
        let op_alg = op_alg.clone();
        ids.push(Identity::custom("phi-mu-i", move |ctx, w| {
            let t = w.len();
            if t == 0 {
                return Ok(vacuous());
            }
            let op_ctx = Ctx::new(&op_alg, ctx.sector, cap);
            for i in 0..=t {
                let l = {
                    let r = Op::mu(i).apply_to_word(w, ctx)?;
                    ApplyResult { chain: apply_phi(&r.chain, ctx.alg), overflow: r.overflow }
                };
                let p = apply_phi(&Chain::of_word(w.clone()), ctx.alg);
                let r = Op::mu(t - i).apply(&p, &op_ctx)?;
                if l.overflow || r.overflow {
                    return Ok(Outcome::Uncertified);
                }
                if l.chain != r.chain {
                    return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                }
            }
            Ok(vacuous())
        }));
    }
    // mixed-complex isomorphism: Φ b = b Φ and Φ B = -B Φ
    ids.push(mk(
        "phi-hochschild",
        false,
        Box::new(apply_then_phi(Op::hochschild())),
        Box::new(phi_then_apply(Op::hochschild())),
    ));
    ids.push(mk(
        "phi-connes-e",
        false,
        Box::new(apply_then_phi(Op::b_connes_e())),
        Box::new(phi_then_apply(Op::b_connes_e().neg())),
    ));
    // involution
    {
        let op_alg = op_alg.clone();
        ids.push(Identity::custom("phi-involution", move |ctx, w| {
            let once = apply_phi(&Chain::of_word(w.clone()), ctx.alg);
            let twice = apply_phi(&once, &op_alg);
            let id_chain = Chain::of_word(w.clone());
            Ok(Outcome::Certified { equal: twice == id_chain, lhs: twice, rhs: id_chain })
        }));
    }
    ids
}

/// Z-grading exchange laws (graded algebras only).
pub fn suite_gamma(max_len: usize) -> Vec<Identity> {
    let mut ids = Vec::new();
    ids.push(Identity::custom("gamma-delta", |ctx, w| {
        let t = w.len();
        for i in 0..=t {
            for j in 0..=t {
                let l = ev(&Op::comp(vec![Op::Gen(Gen::GammaI(i)), Op::delta(j)]), w, ctx)?;
                let rhs_op = if i == j {
                    Op::sum(vec![
                        Op::comp(vec![Op::delta(i), Op::Gen(Gen::GammaI(i))]),
                        Op::delta(i),
                    ])
                } else {
                    Op::comp(vec![Op::delta(j), Op::Gen(Gen::GammaI(i))])
                };
                let r = ev(&rhs_op, w, ctx)?;
                if l.overflow || r.overflow {
                    return Ok(Outcome::Uncertified);
                }
                if l.chain != r.chain {
                    return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                }
            }
        }
        Ok(vacuous())
    }));
    ids.push(Identity::custom("gamma-mu", |ctx, w| {
        let t = w.len();
        if t == 0 {
            return Ok(vacuous());
        }
        for i in 0..=t.saturating_sub(1) {
            for j in 0..=t {
                let l = ev(&Op::comp(vec![Op::Gen(Gen::GammaI(i)), Op::mu(j)]), w, ctx)?;
                // μ^(j) merges letters (j, j+1); the wrap j = t merges (t, 0)
                // into the new head, which carries both degrees.
                let rhs_op = if j == t {
                    if i == 0 {
                        Op::sum(vec![
                            Op::comp(vec![Op::mu(t), Op::Gen(Gen::GammaI(0))]),
                            Op::comp(vec![Op::mu(t), Op::Gen(Gen::GammaI(t))]),
                        ])
                    } else {
                        Op::comp(vec![Op::mu(t), Op::Gen(Gen::GammaI(i))])
                    }
                } else if i == j {
                    Op::sum(vec![
                        Op::comp(vec![Op::mu(i), Op::Gen(Gen::GammaI(i))]),
                        Op::comp(vec![Op::mu(i), Op::Gen(Gen::GammaI(i + 1))]),
                    ])
                } else if i < j {
                    Op::comp(vec![Op::mu(j), Op::Gen(Gen::GammaI(i))])
                } else {
                    Op::comp(vec![Op::mu(j), Op::Gen(Gen::GammaI(i + 1))])
                };
                let r = ev(&rhs_op, w, ctx)?;
                if l.overflow || r.overflow {
                    return Ok(Outcome::Uncertified);
                }
                if l.chain != r.chain {
                    return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                }
            }
        }
        Ok(vacuous())
    }));
    ids.push(Identity::custom("gamma-he", |ctx, w| {
        if w.is_e_headed() {
            return Ok(vacuous());
        }
        let t = w.len();
        let he = Op::Gen(Gen::He);
        // γ^(0) hᵉ = 0; γ^(i) hᵉ = hᵉ γ^(i-1) for i >= 1
        let l0 = ev(&Op::comp(vec![Op::Gen(Gen::GammaI(0)), he.clone()]), w, ctx)?;
        if l0.overflow {
            return Ok(Outcome::Uncertified);
        }
        if !l0.chain.is_zero() {
            return Ok(Outcome::Certified { equal: false, lhs: l0.chain, rhs: Chain::zero() });
        }
        for i in 1..=t + 1 {
            let l = ev(&Op::comp(vec![Op::Gen(Gen::GammaI(i)), he.clone()]), w, ctx)?;
            let r = ev(&Op::comp(vec![he.clone(), Op::Gen(Gen::GammaI(i - 1))]), w, ctx)?;
            if l.overflow || r.overflow {
                return Ok(Outcome::Uncertified);
            }
            if l.chain != r.chain {
                return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
            }
        }
        Ok(vacuous())
    }));
    // Γ' = Σ γ^(i) + 2Γ
    ids.push(Identity::custom("grading-decomposition", |ctx, w| {
        let t = w.len();
        let mut gamma_sum = vec![Op::Gen(Gen::Gamma).scale(Q::from_int(2))];
        for i in 0..=t {
            gamma_sum.push(Op::Gen(Gen::GammaI(i)));
        }
        let l = ev(&Op::Gen(Gen::GammaPrime), w, ctx)?;
        let r = ev(&Op::sum(gamma_sum), w, ctx)?;
        Ok(outcome_of(l, r))
    }));
    // [Γ', bᵉ] = bᵉ and [Γ', Bᵉ] = -Bᵉ
    ids.push(Identity::pair(
        "grading-raises-b",
        comm(Op::Gen(Gen::GammaPrime), Op::hochschild()),
        Op::hochschild(),
    ));
    ids.push(Identity::pair(
        "grading-lowers-connes",
        comm(Op::Gen(Gen::GammaPrime), Op::b_connes_e()),
        Op::b_connes_e().neg(),
    ));
    let _ = max_len;
    ids
}

/// The insertion calculus for fixed parity-homogeneous elements.
pub fn suite_insertions(alg: &SuperAlgebra, samples: &[Elem]) -> Vec<Identity> {
    let mut ids = Vec::new();
    let named: Vec<(Arc<Elem>, u8, String)> = samples
        .iter()
        .filter_map(|e| {
            alg.elem_parity(e).map(|p| (Arc::new(e.clone()), p, alg.format_elem(e)))
        })
        .collect();
    for (elem, p, name) in &named {
        let ins = Op::insert_all(elem.clone(), p ^ 1);
        // [b(δ), ins(a)] = ins(da)
        if let Some(da) = alg.diff_elem(elem) {
            let rhs = if da.is_empty() {
                Op::Zero
            } else {
                let dp = alg.elem_parity(&da).unwrap_or(p ^ 1);
                Op::insert_all(Arc::new(da), dp ^ 1)
            };
            ids.push(Identity::pair(
                format!("insert-delta a={name}"),
                supercomm(Op::Gen(Gen::BDelta), 1, ins.clone(), p ^ 1),
                rhs,
            ));
        }
        // [b(μ), ins(a)] = (-1)^{|a|} ad(a)
        let ad = Op::Gen(Gen::AdAll { elem: elem.clone(), parity: *p });
        ids.push(Identity::pair(
            format!("insert-mu a={name}"),
            supercomm(Op::Gen(Gen::BMu), 1, ins.clone(), p ^ 1),
            if *p == 1 { ad.neg() } else { ad },
        ));
        // [B, ins(a)] = 0
        ids.push(Identity::pair(
            format!("insert-connes a={name}"),
            supercomm(Op::b_connes_e(), 1, ins.clone(), p ^ 1),
            Op::Zero,
        ));
        // hᵉ a^(i) = (-1)^{|a|+1} a^(i+1) hᵉ
        let elem2 = elem.clone();
        let p2 = *p;
        ids.push(Identity::custom(format!("insert-he-shift a={name}"), move |ctx, w| {
            if w.is_e_headed() {
                return Ok(vacuous());
            }
            let t = w.len();
            for i in 1..=t + 1 {
                let l = ev(
                    &Op::comp(vec![Op::Gen(Gen::He), Op::insert(elem2.clone(), p2 ^ 1, i)]),
                    w,
                    ctx,
                )?;
                let mut rhs = Op::comp(vec![Op::insert(elem2.clone(), p2 ^ 1, i + 1), Op::Gen(Gen::He)]);
                if p2 ^ 1 == 1 {
                    rhs = rhs.neg();
                }
                let r = ev(&rhs, w, ctx)?;
                if l.overflow || r.overflow {
                    return Ok(Outcome::Uncertified);
                }
                if l.chain != r.chain {
                    return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                }
            }
            Ok(vacuous())
        }));
    }
    // [ins(a'), ins(a)] = 0 and the slotwise commutation law
    for (ea, pa, na) in &named {
        for (eb, pb, nb) in &named {
            ids.push(Identity::pair(
                format!("insert-insert a'={na} a={nb}"),
                supercomm(
                    Op::insert_all(ea.clone(), pa ^ 1),
                    pa ^ 1,
                    Op::insert_all(eb.clone(), pb ^ 1),
                    pb ^ 1,
                ),
                Op::Zero,
            ));
            let (ea, eb, pa, pb) = (ea.clone(), eb.clone(), *pa, *pb);
            ids.push(Identity::custom(format!("insert-slots a'={na} a={nb}"), move |ctx, w| {
                let t = w.len();
                // a'^(j) a^(i) = (-1)^{|sa'||sa|} { a^(i+1) a'^(j), j <= i;
                //                                   a^(i)   a'^(j-1), j > i }
                for i in 1..=t + 1 {
                    for j in 1..=t + 2 {
                        let l = ev(
                            &Op::comp(vec![
                                Op::insert(ea.clone(), pa ^ 1, j),
                                Op::insert(eb.clone(), pb ^ 1, i),
                            ]),
                            w,
                            ctx,
                        )?;
                        let mut rhs = if j <= i {
                            Op::comp(vec![
                                Op::insert(eb.clone(), pb ^ 1, i + 1),
                                Op::insert(ea.clone(), pa ^ 1, j),
                            ])
                        } else {
                            Op::comp(vec![
                                Op::insert(eb.clone(), pb ^ 1, i),
                                Op::insert(ea.clone(), pa ^ 1, j - 1),
                            ])
                        };
                        if (pa ^ 1) & (pb ^ 1) == 1 {
                            rhs = rhs.neg();
                        }
                        let r = ev(&rhs, w, ctx)?;
                        if l.overflow || r.overflow {
                            return Ok(Outcome::Uncertified);
                        }
                        if l.chain != r.chain {
                            return Ok(Outcome::Certified { equal: false, lhs: l.chain, rhs: r.chain });
                        }
                    }
                }
                Ok(vacuous())
            }));
        }
    }
    ids
}

/// Degree-raising differential of the unital complex as a standalone map.
pub fn apply_connes(x: &Chain, ctx: &Ctx) -> Result<ApplyResult, EvalError> {
    if ctx.alg.unit().is_none() {
        return Err(EvalError::NonUnital);
    }
    Op::b_connes().apply(x, ctx)
}

/// Degree-raising differential of the extended complex.
pub fn apply_connes_e(x: &Chain, ctx: &Ctx) -> Result<ApplyResult, EvalError> {
    Op::b_connes_e().apply(x, ctx)
}

/// The homotopy-equivalence data between the plain and extended complexes:
/// identities certifying p(u)ι(u) = id + [b+uB, H(u)] (plain sector, unital)
/// and ι(u)p(u) = id + [bᵉ+uBᵉ, Hᵉ] (extended sector).
pub fn iota_p_identities() -> (Vec<Identity>, Vec<Identity>) {
    // H(u) = u (1-τ^{-1}) h h h N; the u-degree splits into two plain laws.
    let hhh = Op::comp(vec![
        Op::one_minus_tau_inv(),
        Op::Gen(Gen::H),
        Op::Gen(Gen::H),
        Op::Gen(Gen::H),
        Op::Gen(Gen::NSum),
    ]);
    let hh = Op::comp(vec![
        Op::one_minus_tau_inv(),
        Op::Gen(Gen::H),
        Op::Gen(Gen::H),
        Op::Gen(Gen::NSum),
    ]);
    let plain = vec![
        Identity::pair("retraction-u1", hh, anticomm(Op::hochschild(), hhh.clone())),
        Identity::pair("retraction-u2", anticomm(Op::b_connes(), hhh), Op::Zero),
    ];
    // Hᵉ = hᵉ h μ^(0) on the e-headed part.
    let he_h_mu = Op::comp(vec![
        Op::Gen(Gen::He),
        Op::Gen(Gen::H),
        Op::mu(0),
        Op::Gen(Gen::ProjPlus),
    ]);
    let p0 = Op::sum(vec![
        Op::Gen(Gen::ProjC),
        Op::comp(vec![Op::one_minus_tau_inv(), Op::Gen(Gen::H), Op::mu(0), Op::Gen(Gen::ProjPlus)]),
    ]);
    let iota1_p0 = Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::H), Op::Gen(Gen::NSum), p0.clone()]);
    let ce = vec![
        Identity::pair(
            "section-u0",
            p0,
            Op::sum(vec![Op::id(), anticomm(Op::hochschild(), he_h_mu.clone())]),
        ),
        Identity::pair("section-u1", iota1_p0, anticomm(Op::b_connes_e(), he_h_mu)),
    ];
    (plain, ce)
}
