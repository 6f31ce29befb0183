//! Finite Laurent polynomials in `u` with chain-operator coefficients, and
//! the checks built from them: the connection law, homotopy certificates,
//! morphism residuals, and gauge transfer.

use std::collections::BTreeMap;

use crate::cyclic::{Chain, Ctx, EvalError, Op, Word};
use crate::scalars::Q;

/// Σ u^k · op_k with finitely many powers.
#[derive(Clone, Debug)]
pub struct UOp {
    terms: Vec<(i64, Op)>,
}

/// Evaluation result: chains per u-power, plus the truncation flag.
#[derive(Clone, Debug, Default)]
pub struct LaurentChain {
    pub coeffs: BTreeMap<i64, Chain>,
    pub overflow: bool,
}

impl LaurentChain {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Chain::is_zero)
    }

    pub fn add_chain(&mut self, k: i64, c: Chain) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Chain::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn sub(&self, rhs: &LaurentChain) -> LaurentChain {
        let mut out = self.clone();
        out.overflow |= rhs.overflow;
        for (k, c) in &rhs.coeffs {
            out.add_chain(*k, c.scale(&Q::from_int(-1)));
        }
        out
    }

    pub fn format(&self, alg: &crate::superalg::SuperAlgebra) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(k, c)| format!("u^{k}·({})", c.format(alg)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl UOp {
    pub fn zero() -> Self {
        UOp { terms: Vec::new() }
    }

    pub fn from_op(power: i64, op: Op) -> Self {
        UOp { terms: vec![(power, op)] }
    }

    pub fn terms(&self) -> &[(i64, Op)] {
        &self.terms
    }

    pub fn add(&self, rhs: &UOp) -> UOp {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        UOp { terms }
    }

    pub fn scale(&self, c: &Q) -> UOp {
        UOp { terms: self.terms.iter().map(|(k, op)| (*k, op.clone().scale(c.clone()))).collect() }
    }

    pub fn neg(&self) -> UOp {
        self.scale(&Q::from_int(-1))
    }

    /// Multiply by u^k.
    pub fn shift(&self, k: i64) -> UOp {
        UOp { terms: self.terms.iter().map(|(p, op)| (p + k, op.clone())).collect() }
    }

    /// Substitute u -> -u.
    pub fn negate_u(&self) -> UOp {
        UOp {
            terms: self
                .terms
                .iter()
                .map(|(k, op)| {
                    let op = if k.rem_euclid(2) == 1 { op.clone().neg() } else { op.clone() };
                    (*k, op)
                })
                .collect(),
        }
    }

    /// Composition (self ∘ rhs).
    pub fn compose(&self, rhs: &UOp) -> UOp {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ka, a) in &self.terms {
            for (kb, b) in &rhs.terms {
                terms.push((ka + kb, Op::comp(vec![a.clone(), b.clone()])));
            }
        }
        UOp { terms }
    }

    /// Formal derivative in u of the coefficient family.
    pub fn ddu(&self) -> UOp {
        UOp {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| *k != 0)
                .map(|(k, op)| (k - 1, op.clone().scale(Q::from_int(*k))))
                .collect(),
        }
    }

    pub fn apply_to_word(&self, w: &Word, ctx: &Ctx) -> Result<LaurentChain, EvalError> {
        let mut out = LaurentChain::default();
        for (k, op) in &self.terms {
            let r = op.apply_to_word(w, ctx)?;
            out.overflow |= r.overflow;
            out.add_chain(*k, r.chain);
        }
        Ok(out)
    }

    pub fn apply(&self, x: &LaurentChain, ctx: &Ctx) -> Result<LaurentChain, EvalError> {
        let mut out = LaurentChain::default();
        out.overflow = x.overflow;
        for (p, chain) in &x.coeffs {
            for (k, op) in &self.terms {
                let r = op.apply(chain, ctx)?;
                out.overflow |= r.overflow;
                out.add_chain(p + k, r.chain);
            }
        }
        Ok(out)
    }
}

/// The totalized differential b + uB given its two parts.
pub fn totalized(b_part: Op, degree_raising: Op) -> UOp {
    UOp { terms: vec![(0, b_part), (1, degree_raising)] }
}

/// Commutator [a, d] = a∘d - d∘a (for an even `a`).
pub fn commutator(a: &UOp, d: &UOp) -> UOp {
    a.compose(d).add(&d.compose(a).neg())
}

/// Anticommutator [d, w] = d∘w + w∘d (for an odd witness `w`).
pub fn anticommutator(d: &UOp, w: &UOp) -> UOp {
    d.compose(w).add(&w.compose(d))
}

/// The connection-law defect of a coefficient operator `a` against the
/// totalized differential `d = b + uB`:
///   B + [a, d] - (1/2u) d.
/// The law holds exactly on a word iff this evaluates to zero.
pub fn connection_law_defect(a: &UOp, d: &UOp) -> UOp {
    let du = d.ddu(); // = B
    let half = Q::new(1, 2);
    du.add(&commutator(a, d)).add(&d.shift(-1).scale(&half).neg())
}

/// Residual of a u-morphism `f` between connections with coefficient
/// operators `a_src` and `a_tgt`:  df/du + a_tgt ∘ f - f ∘ a_src.
pub fn morphism_residual(f: &UOp, a_src: &UOp, a_tgt: &UOp) -> UOp {
    f.ddu().add(&a_tgt.compose(f)).add(&f.compose(a_src).neg())
}

/// Transfer of a connection along a homotopy retraction:
///   a = p ∘ dι/du + p ∘ a' ∘ ι + (1/2u) h ∘ (b - uB).
pub fn gauge_transfer_op(a_tgt: &UOp, iota: &UOp, p: &UOp, h: &UOp, d: &UOp) -> UOp {
    let b_minus_ub = {
        let mut terms = Vec::new();
        for (k, op) in d.terms() {
            let op = if *k == 1 { op.clone().neg() } else { op.clone() };
            terms.push((*k, op));
        }
        UOp { terms }
    };
    p.compose(&iota.ddu())
        .add(&p.compose(a_tgt).compose(iota))
        .add(&h.compose(&b_minus_ub).shift(-1).scale(&Q::new(1, 2)))
}

/// Tate twist: a - (n/2) u^{-1}.
pub fn tate_twist(a: &UOp, n: i64) -> UOp {
    a.add(&UOp::from_op(-1, Op::id().scale(Q::new(-n, 2))))
}
