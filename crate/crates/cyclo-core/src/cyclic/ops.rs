//! The operator calculus on cyclic words.
//!
//! Every generator carries the exact sign conventions of the complex: a
//! single routine (`sparity_prefix`) produces the `(-1)^{Σ|s a_k|}`-type
//! prefixes, and each generator's sign is assembled from it according to its
//! defining formula. Operators are families indexed by tail length; an index
//! out of range for the current length contributes zero.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalars::Q;
use crate::superalg::{Elem, SuperAlgebra, TableEntry};

use super::word::{ApplyResult, Chain, Sector, Tail, Word, HEAD_E};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("operator {op} is not defined on this sector/input")]
    SectorMismatch { op: String },
    #[error("operator requires a unital algebra")]
    NonUnital,
    #[error("operator requires a Z-graded algebra")]
    NotZGraded,
}

#[derive(Clone, Debug)]
pub enum Gen {
    Id,
    /// Cyclic rotation τ^j (j may be negative; reduced mod tail length + 1).
    Tau(i64),
    /// Differential on the letter at position `i` (0 = head). The family is
    /// periodic in `i` (it is a τ-conjugate of the head case), so the index
    /// reduces mod (tail length + 1).
    Delta(usize),
    /// δ at the top index of the current length.
    DeltaStar,
    /// Multiplication of letters `i` and `i+1` (wrapping at `i = n`).
    Mu(usize),
    /// μ at the top index of the current length.
    MuStar,
    /// Sum of all differential insertions (the δ-part of the Hochschild map).
    BDelta,
    /// Sum of all edge/inner multiplications (the μ-part).
    BMu,
    /// μ^(0) + μ^(n): the part mapping the e-headed column back down.
    BvMu,
    /// Inner multiplications only: Σ_{i=1..n-1} μ^(i).
    BhMu,
    /// Norm: Σ_{j=0..n} τ^j.
    NSum,
    /// Weighted norm: Σ_{j=1..n+1} j τ^j.
    NPrime,
    /// Prepend the algebra unit (old head moves into the tail).
    H,
    /// Prepend the adjoined unit marker.
    He,
    /// Length grading: multiply by -n/2.
    Gamma,
    /// Z-grading: multiply by (Σ deg(a_i) - n).
    GammaPrime,
    /// Multiply by deg(a_i).
    GammaI(usize),
    /// Projection onto non-e-headed words.
    ProjC,
    /// Projection onto e-headed words.
    ProjPlus,
    /// Insertion of a fixed parity-homogeneous element at slot `i`
    /// (between letters i-1 and i), with the suspended-parity sign.
    Insert { elem: Arc<Elem>, sparity: u8, slot: usize },
    /// Sum of insertions over all slots 1..=n+1.
    InsertAll { elem: Arc<Elem>, sparity: u8 },
    /// Super-commutator with a fixed element on every letter.
    AdAll { elem: Arc<Elem>, parity: u8 },
    /// Σ_{i=1..n} Σ_{j=i+1..n+1} τ^j δ^(i).
    VSumDelta,
    /// Σ_{i=1..n} Σ_{j=1..i} τ^j δ^(i).
    VSumDeltaCirc,
    /// Σ_{i=1..n-1} Σ_{j=i+1..n} τ^j μ^(i).
    VSumMu,
    /// Σ_{i=1..n} Σ_{j=i+1..n+1} τ^j γ^(i).
    VSumGamma,
    /// Σ_{i=1..n+1} Σ_{l=i+1..n+2} τ^l a^(i) for a fixed element.
    VSumInsert { elem: Arc<Elem>, sparity: u8 },
}

#[derive(Clone, Debug)]
pub enum Op {
    Zero,
    Gen(Gen),
    /// Sum of operators.
    Sum(Vec<Op>),
    /// Composition; the LAST entry is applied first.
    Comp(Vec<Op>),
    Scale(Q, Box<Op>),
}

impl Op {
    pub fn id() -> Op {
        Op::Gen(Gen::Id)
    }
    pub fn tau(j: i64) -> Op {
        Op::Gen(Gen::Tau(j))
    }
    pub fn delta(i: usize) -> Op {
        Op::Gen(Gen::Delta(i))
    }
    pub fn mu(i: usize) -> Op {
        Op::Gen(Gen::Mu(i))
    }
    pub fn scale(self, c: Q) -> Op {
        Op::Scale(c, Box::new(self))
    }
    pub fn neg(self) -> Op {
        self.scale(Q::from_int(-1))
    }
    pub fn comp(ops: Vec<Op>) -> Op {
        Op::Comp(ops)
    }
    pub fn sum(ops: Vec<Op>) -> Op {
        Op::Sum(ops)
    }
    /// 1 - τ^{-1}.
    pub fn one_minus_tau_inv() -> Op {
        Op::Sum(vec![Op::id(), Op::tau(-1).neg()])
    }
    /// The degree-raising differential of the unital complex:
    /// (1 - τ^{-1}) h N.
    pub fn b_connes() -> Op {
        Op::comp(vec![Op::one_minus_tau_inv(), Op::Gen(Gen::H), Op::Gen(Gen::NSum)])
    }
    /// The degree-raising differential of the extended complex: hᵉN on the
    /// non-e-headed part.
    pub fn b_connes_e() -> Op {
        Op::comp(vec![Op::Gen(Gen::He), Op::Gen(Gen::NSum), Op::Gen(Gen::ProjC)])
    }
    /// Full Hochschild differential b = b(δ) + b(μ).
    pub fn hochschild() -> Op {
        Op::sum(vec![Op::Gen(Gen::BDelta), Op::Gen(Gen::BMu)])
    }
    pub fn insert(elem: Arc<Elem>, sparity: u8, slot: usize) -> Op {
        Op::Gen(Gen::Insert { elem, sparity, slot })
    }
    pub fn insert_all(elem: Arc<Elem>, sparity: u8) -> Op {
        Op::Gen(Gen::InsertAll { elem, sparity })
    }
}

pub struct Ctx<'a> {
    pub alg: &'a SuperAlgebra,
    pub sector: Sector,
    pub cap: usize,
}

impl<'a> Ctx<'a> {
    pub fn new(alg: &'a SuperAlgebra, sector: Sector, cap: usize) -> Self {
        Ctx { alg, sector, cap }
    }

    fn parity(&self, letter: u32) -> u8 {
        if letter == HEAD_E {
            0
        } else {
            self.alg.parity(letter)
        }
    }

    fn sparity(&self, letter: u32) -> u8 {
        self.parity(letter) ^ 1
    }

    /// Σ_{k < upto} |s a_k| mod 2.
    fn sparity_prefix(&self, w: &Word, upto: usize) -> u8 {
        let mut s = 0u8;
        for k in 0..upto {
            s ^= self.sparity(w.letter(k));
        }
        s
    }

    fn sparity_total(&self, w: &Word) -> u8 {
        self.sparity_prefix(w, w.len() + 1)
    }

    fn zdeg(&self, letter: u32) -> Result<i64, EvalError> {
        if letter == HEAD_E {
            return Ok(0);
        }
        self.alg.zdeg(letter).ok_or(EvalError::NotZGraded)
    }
}

fn signed(coef: &Q, exp: u8) -> Q {
    if exp & 1 == 1 {
        -coef
    } else {
        coef.clone()
    }
}

struct Acc<'c> {
    out: &'c mut Chain,
    overflow: &'c mut bool,
}

/// Emit `weight(j) · τ^j(w)` for every j in the range, computing the parity
/// prefixes once per word.
fn tau_rotations(
    w: &Word,
    coef: &Q,
    ctx: &Ctx,
    acc: &mut Acc,
    j_lo: usize,
    j_hi: usize,
    weight: impl Fn(usize) -> Q,
) -> Result<(), EvalError> {
    let n = w.len();
    if n == 0 {
        for j in j_lo..=j_hi {
            let f = weight(j);
            if !f.is_zero() {
                acc.out.push_raw(w.clone(), coef * &f);
            }
        }
        return Ok(());
    }
    if w.is_e_headed() {
        return Err(EvalError::SectorMismatch { op: "tau on e-headed word".into() });
    }
    let period = n + 1;
    let mut prefix = smallvec::SmallVec::<[u8; 12]>::with_capacity(period + 1);
    let mut s = 0u8;
    prefix.push(0);
    for k in 0..period {
        s ^= ctx.sparity(w.letter(k));
        prefix.push(s);
    }
    let total = s;
    for j in j_lo..=j_hi {
        let f = weight(j);
        if f.is_zero() {
            continue;
        }
        let jj = j % period;
        let exp = (total ^ 1) & prefix[jj];
        let head = w.letter(jj);
        let mut tail = Tail::with_capacity(n);
        for k in jj + 1..=n {
            tail.push(w.letter(k));
        }
        for k in 0..jj {
            tail.push(w.letter(k));
        }
        acc.out.push_raw(Word { head, tail }, signed(&(coef * &f), exp));
    }
    Ok(())
}

impl Gen {
    #[allow(clippy::too_many_lines)]
    fn apply(&self, w: &Word, coef: &Q, ctx: &Ctx, acc: &mut Acc) -> Result<(), EvalError> {
        let n = w.len();
        match self {
            Gen::Id => acc.out.push_raw(w.clone(), coef.clone()),
            Gen::Tau(j) => {
                if n == 0 {
                    acc.out.push_raw(w.clone(), coef.clone());
                    return Ok(());
                }
                if w.is_e_headed() {
                    return Err(EvalError::SectorMismatch { op: "tau on e-headed word".into() });
                }
                let period = (n + 1) as i64;
                let jj = j.rem_euclid(period) as usize;
                if jj == 0 {
                    acc.out.push_raw(w.clone(), coef.clone());
                    return Ok(());
                }
                // sign of τ^j: (-1)^{(S-1) Σ_{k<j}|s a_k|}
                let total = ctx.sparity_total(w);
                let pre = ctx.sparity_prefix(w, jj);
                let exp = (total ^ 1) & pre;
                let head = w.letter(jj);
                let mut tail = Tail::with_capacity(n);
                for k in jj + 1..=n {
                    tail.push(w.letter(k));
                }
                for k in 0..jj {
                    tail.push(w.letter(k));
                }
                acc.out.push_raw(Word { head, tail }, signed(coef, exp));
            }
            Gen::Delta(i) => {
                let i = &(*i % (n + 1));
                let letter = w.letter(*i);
                if letter == HEAD_E {
                    return Ok(()); // d(e) = 0
                }
                match ctx.alg.diff_basis(letter) {
                    TableEntry::Overflow => *acc.overflow = true,
                    TableEntry::Val(d) => {
                        if d.is_empty() {
                            return Ok(());
                        }
                        let sign = ctx.sparity_prefix(w, *i);
                        for (b, c) in d {
                            let mut nw = w.clone();
                            if *i == 0 {
                                nw.head = *b;
                            } else {
                                nw.tail[*i - 1] = *b;
                            }
                            acc.out.push_raw(nw, signed(&(coef * c), sign));
                        }
                    }
                }
            }
            Gen::Mu(i) => {
                if n == 0 || *i > n {
                    return Ok(());
                }
                if *i < n {
                    // product of letters i, i+1; sign (-1)^{Σ_{k<=i}|s a_k| + 1}
                    let exp = ctx.sparity_prefix(w, *i + 1) ^ 1;
                    let left = w.letter(*i);
                    let right = w.letter(*i + 1);
                    let emit = |prod: &Elem, acc: &mut Acc, coef: &Q| {
                        for (b, c) in prod {
                            let mut tail = Tail::with_capacity(n - 1);
                            let head;
                            if *i == 0 {
                                head = *b;
                                tail.extend(w.tail.iter().skip(1).copied());
                            } else {
                                head = w.head;
                                for (t, v) in w.tail.iter().enumerate() {
                                    if t == *i - 1 {
                                        tail.push(*b);
                                    } else if t == *i {
                                        continue;
                                    } else {
                                        tail.push(*v);
                                    }
                                }
                            }
                            acc.out.push_raw(Word { head, tail }, signed(&(coef * c), exp));
                        }
                    };
                    if left == HEAD_E {
                        // e·a = a
                        let prod = vec![(right, Q::one())];
                        emit(&prod, acc, coef);
                    } else {
                        match ctx.alg.mul_basis(left, right) {
                            TableEntry::Overflow => *acc.overflow = true,
                            TableEntry::Val(prod) => emit(prod, acc, coef),
                        }
                    }
                } else {
                    // i = n: head becomes a_n a_0, with
                    // sign -(-1)^{|s a_n| (|a_0| + Σ_{k=1..n-1}|s a_k|)}
                    let sp_last = ctx.sparity(w.letter(n));
                    let mut mid = ctx.parity(w.head);
                    for k in 1..n {
                        mid ^= ctx.sparity(w.letter(k));
                    }
                    let exp = 1 ^ (sp_last & mid);
                    let last = w.letter(n);
                    let emit = |prod: &Elem, acc: &mut Acc, coef: &Q| {
                        for (b, c) in prod {
                            let mut tail = Tail::with_capacity(n - 1);
                            tail.extend(w.tail.iter().take(n - 1).copied());
                            acc.out.push_raw(Word { head: *b, tail }, signed(&(coef * c), exp));
                        }
                    };
                    if w.is_e_headed() {
                        let prod = vec![(last, Q::one())];
                        emit(&prod, acc, coef);
                    } else {
                        match ctx.alg.mul_basis(last, w.head) {
                            TableEntry::Overflow => *acc.overflow = true,
                            TableEntry::Val(prod) => emit(prod, acc, coef),
                        }
                    }
                }
            }
            Gen::DeltaStar => {
                Gen::Delta(n).apply(w, coef, ctx, acc)?;
            }
            Gen::MuStar => {
                if n >= 1 {
                    Gen::Mu(n).apply(w, coef, ctx, acc)?;
                }
            }
            Gen::BDelta => {
                for i in 0..=n {
                    Gen::Delta(i).apply(w, coef, ctx, acc)?;
                }
            }
            Gen::BMu => {
                for i in 0..=n {
                    Gen::Mu(i).apply(w, coef, ctx, acc)?;
                }
            }
            Gen::BvMu => {
                if n >= 1 {
                    Gen::Mu(0).apply(w, coef, ctx, acc)?;
                    Gen::Mu(n).apply(w, coef, ctx, acc)?;
                }
            }
            Gen::BhMu => {
                for i in 1..n {
                    Gen::Mu(i).apply(w, coef, ctx, acc)?;
                }
            }
            Gen::NSum => {
                tau_rotations(w, coef, ctx, acc, 0, n, |_| Q::one())?;
            }
            Gen::NPrime => {
                tau_rotations(w, coef, ctx, acc, 1, n + 1, |j| Q::from_int(j as i64))?;
            }
            Gen::H => {
                let unit = ctx.alg.unit().ok_or(EvalError::NonUnital)?;
                if w.is_e_headed() {
                    return Err(EvalError::SectorMismatch { op: "h on e-headed word".into() });
                }
                if n + 1 > ctx.cap {
                    *acc.overflow = true;
                    return Ok(());
                }
                for (b, c) in unit {
                    let mut tail = Tail::with_capacity(n + 1);
                    tail.push(w.head);
                    tail.extend(w.tail.iter().copied());
                    acc.out.push_raw(Word { head: *b, tail }, coef * c);
                }
            }
            Gen::He => {
                if n + 1 > ctx.cap {
                    *acc.overflow = true;
                    return Ok(());
                }
                let head = match ctx.sector {
                    Sector::Plain => ctx
                        .alg
                        .adjoined_unit()
                        .ok_or_else(|| EvalError::SectorMismatch { op: "he without adjoined unit".into() })?,
                    Sector::Ce | Sector::CPlus => HEAD_E,
                };
                if w.is_e_headed() {
                    return Err(EvalError::SectorMismatch { op: "he on e-headed word".into() });
                }
                let mut tail = Tail::with_capacity(n + 1);
                tail.push(w.head);
                tail.extend(w.tail.iter().copied());
                acc.out.push_raw(Word { head, tail }, coef.clone());
            }
            Gen::Gamma => {
                let c = coef * &Q::new(-(n as i64), 2);
                acc.out.push_raw(w.clone(), c);
            }
            Gen::GammaPrime => {
                let mut total = 0i64;
                for k in 0..=n {
                    total += ctx.zdeg(w.letter(k))?;
                }
                let c = coef * &Q::from_int(total - n as i64);
                acc.out.push_raw(w.clone(), c);
            }
            Gen::GammaI(i) => {
                // periodic family, like the δ's
                let i = i % (n + 1);
                let c = coef * &Q::from_int(ctx.zdeg(w.letter(i))?);
                acc.out.push_raw(w.clone(), c);
            }
            Gen::ProjC => {
                if !w.is_e_headed() {
                    acc.out.push_raw(w.clone(), coef.clone());
                }
            }
            Gen::ProjPlus => {
                if w.is_e_headed() {
                    acc.out.push_raw(w.clone(), coef.clone());
                }
            }
            Gen::Insert { elem, sparity, slot } => {
                if *slot == 0 || *slot > n + 1 {
                    return Ok(());
                }
                if n + 1 > ctx.cap {
                    *acc.overflow = true;
                    return Ok(());
                }
                let exp = sparity & ctx.sparity_prefix(w, *slot);
                for (b, c) in elem.iter() {
                    let mut tail = Tail::with_capacity(n + 1);
                    tail.extend(w.tail.iter().take(slot - 1).copied());
                    tail.push(*b);
                    tail.extend(w.tail.iter().skip(slot - 1).copied());
                    acc.out.push_raw(Word { head: w.head, tail }, signed(&(coef * c), exp));
                }
            }
            Gen::InsertAll { elem, sparity } => {
                for slot in 1..=n + 1 {
                    Gen::Insert { elem: elem.clone(), sparity: *sparity, slot }.apply(w, coef, ctx, acc)?;
                }
            }
            Gen::AdAll { elem, parity } => {
                for i in 0..=n {
                    let letter = w.letter(i);
                    if letter == HEAD_E {
                        continue; // [a, e] = 0
                    }
                    let exp = parity & ctx.sparity_prefix(w, i);
                    for (b, c) in elem.iter() {
                        // [b, letter] = b·letter - (-1)^{|b||letter|} letter·b
                        let lp = ctx.alg.parity(*b) & ctx.alg.parity(letter);
                        let left = ctx.alg.mul_basis(*b, letter);
                        let right = ctx.alg.mul_basis(letter, *b);
                        let (TableEntry::Val(lv), TableEntry::Val(rv)) = (left, right) else {
                            *acc.overflow = true;
                            continue;
                        };
                        let mut emit = |terms: &Elem, extra_sign: u8| {
                            for (bb, cc) in terms {
                                let mut nw = w.clone();
                                if i == 0 {
                                    nw.head = *bb;
                                } else {
                                    nw.tail[i - 1] = *bb;
                                }
                                acc.out.push_raw(nw, signed(&(&(coef * c) * cc), exp ^ extra_sign));
                            }
                        };
                        emit(lv, 0);
                        emit(rv, 1 ^ lp); // minus, times (-1)^{|b||letter|}
                    }
                }
            }
            Gen::VSumDelta => {
                vsum(w, coef, ctx, acc, 1, |i| (i + 1, n + 1), |i| Gen::Delta(i))?;
            }
            Gen::VSumDeltaCirc => {
                vsum(w, coef, ctx, acc, 1, |i| (1, i), |i| Gen::Delta(i))?;
            }
            Gen::VSumMu => {
                if n >= 2 {
                    vsum_upto(w, coef, ctx, acc, 1, n - 1, |i| (i + 1, n), |i| Gen::Mu(i))?;
                }
            }
            Gen::VSumGamma => {
                vsum(w, coef, ctx, acc, 1, |i| (i + 1, n + 1), |i| Gen::GammaI(i))?;
            }
            Gen::VSumInsert { elem, sparity } => {
                for i in 1..=n + 1 {
                    let mut mid = Chain::zero();
                    let mut inner = Acc { out: &mut mid, overflow: acc.overflow };
                    Gen::Insert { elem: elem.clone(), sparity: *sparity, slot: i }
                        .apply(w, coef, ctx, &mut inner)?;
                    for (mw, mc) in mid.terms() {
                        tau_rotations(mw, mc, ctx, acc, i + 1, n + 2, |_| Q::one())?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn vsum(
    w: &Word,
    coef: &Q,
    ctx: &Ctx,
    acc: &mut Acc,
    i_lo: usize,
    j_range: impl Fn(usize) -> (usize, usize),
    gen_of: impl Fn(usize) -> Gen,
) -> Result<(), EvalError> {
    let n = w.len();
    vsum_upto(w, coef, ctx, acc, i_lo, n, j_range, gen_of)
}

fn vsum_upto(
    w: &Word,
    coef: &Q,
    ctx: &Ctx,
    acc: &mut Acc,
    i_lo: usize,
    i_hi: usize,
    j_range: impl Fn(usize) -> (usize, usize),
    gen_of: impl Fn(usize) -> Gen,
) -> Result<(), EvalError> {
    for i in i_lo..=i_hi {
        let mut mid = Chain::zero();
        let mut inner = Acc { out: &mut mid, overflow: acc.overflow };
        gen_of(i).apply(w, coef, ctx, &mut inner)?;
        let (j_lo, j_hi) = j_range(i);
        if j_lo > j_hi {
            continue;
        }
        for (mw, mc) in mid.terms() {
            tau_rotations(mw, mc, ctx, acc, j_lo, j_hi, |_| Q::one())?;
        }
    }
    Ok(())
}

impl Op {
    fn apply_word(&self, w: &Word, coef: &Q, ctx: &Ctx, acc: &mut Acc) -> Result<(), EvalError> {
        match self {
            Op::Zero => Ok(()),
            Op::Gen(g) => g.apply(w, coef, ctx, acc),
            Op::Sum(ops) => {
                for op in ops {
                    op.apply_word(w, coef, ctx, acc)?;
                }
                Ok(())
            }
            Op::Scale(c, op) => {
                if c.is_zero() {
                    return Ok(());
                }
                op.apply_word(w, &(coef * c), ctx, acc)
            }
            Op::Comp(ops) => {
                let mut cur = Chain::from_terms(vec![(w.clone(), coef.clone())]);
                for op in ops.iter().rev() {
                    let mut next = Chain::zero();
                    let mut inner = Acc { out: &mut next, overflow: acc.overflow };
                    for (cw, cc) in cur.terms() {
                        op.apply_word(cw, cc, ctx, &mut inner)?;
                    }
                    next.normalize();
                    cur = next;
                    if cur.is_zero() {
                        break;
                    }
                }
                for (cw, cc) in cur.terms() {
                    acc.out.push_raw(cw.clone(), cc.clone());
                }
                Ok(())
            }
        }
    }

    pub fn apply(&self, x: &Chain, ctx: &Ctx) -> Result<ApplyResult, EvalError> {
        let mut out = Chain::zero();
        let mut overflow = false;
        {
            let mut acc = Acc { out: &mut out, overflow: &mut overflow };
            for (w, c) in x.terms() {
                self.apply_word(w, c, ctx, &mut acc)?;
            }
        }
        out.normalize();
        Ok(ApplyResult { chain: out, overflow })
    }

    pub fn apply_to_word(&self, w: &Word, ctx: &Ctx) -> Result<ApplyResult, EvalError> {
        self.apply(&Chain::of_word(w.clone()), ctx)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Zero => write!(f, "0"),
            Op::Gen(g) => write!(f, "{g:?}"),
            Op::Sum(v) => {
                write!(f, "(")?;
                for (i, op) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{op}")?;
                }
                write!(f, ")")
            }
            Op::Comp(v) => {
                for (i, op) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, "∘")?;
                    }
                    write!(f, "{op}")?;
                }
                Ok(())
            }
            Op::Scale(c, op) => write!(f, "{c}*{op}"),
        }
    }
}
