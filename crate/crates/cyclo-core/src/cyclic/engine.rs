//! Exhaustive identity verification over basis words.
//!
//! An identity is checked on every enumerated word; inputs on which either
//! side escapes the truncation (length cap or overflowed product) are
//! counted as uncertified and excluded from the assertion. The report states
//! the certified count and the first counterexample, if any.
//!
//! Verification distributes basis words across workers by head letter;
//! reports are identical for every worker count (counts are totals over the
//! full domain and the counterexample is the first in enumeration order).

use serde::Serialize;

use crate::superalg::SuperAlgebra;

use super::ops::{Ctx, EvalError, Op};
use super::word::{Chain, Sector, Word, HEAD_E};

pub enum Outcome {
    Certified { equal: bool, lhs: Chain, rhs: Chain },
    Uncertified,
}

type CustomFn = Box<dyn Fn(&Ctx, &Word) -> Result<Outcome, EvalError> + Send + Sync>;

pub enum IdKind {
    /// lhs(x) = rhs(x) for every certified basis word x.
    OpPair { lhs: Op, rhs: Op },
    Custom(CustomFn),
}

pub struct Identity {
    pub name: String,
    pub kind: IdKind,
}

impl Identity {
    pub fn pair(name: impl Into<String>, lhs: Op, rhs: Op) -> Self {
        Identity { name: name.into(), kind: IdKind::OpPair { lhs, rhs } }
    }

    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(&Ctx, &Word) -> Result<Outcome, EvalError> + Send + Sync + 'static,
    ) -> Self {
        Identity { name: name.into(), kind: IdKind::Custom(Box::new(f)) }
    }

    fn check(&self, ctx: &Ctx, w: &Word) -> Result<Outcome, EvalError> {
        match &self.kind {
            IdKind::OpPair { lhs, rhs } => {
                let l = lhs.apply_to_word(w, ctx)?;
                let r = rhs.apply_to_word(w, ctx)?;
                if l.overflow || r.overflow {
                    Ok(Outcome::Uncertified)
                } else {
                    Ok(Outcome::Certified { equal: l.chain == r.chain, lhs: l.chain, rhs: r.chain })
                }
            }
            IdKind::Custom(f) => f(ctx, w),
        }
    }
}

/// Compare two sides that may each be uncertified.
pub fn outcome_of(l: crate::cyclic::word::ApplyResult, r: crate::cyclic::word::ApplyResult) -> Outcome {
    if l.overflow || r.overflow {
        Outcome::Uncertified
    } else {
        Outcome::Certified { equal: l.chain == r.chain, lhs: l.chain, rhs: r.chain }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub checked: u64,
    pub certified: u64,
    pub status: Status,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub algebra: String,
    pub max_length: usize,
    pub identities: Vec<IdentityReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|r| r.status == Status::Pass)
    }
}

/// Enumeration domain: all basis words of the sector up to a tail length,
/// optionally filtered by a total degree bound (degrees given per basis
/// index; the e-marker counts as degree 0).
#[derive(Clone)]
pub struct WordDomain<'a> {
    pub sector: Sector,
    pub max_len: usize,
    pub degree_filter: Option<(&'a [u32], u32)>,
}

impl<'a> WordDomain<'a> {
    pub fn new(sector: Sector, max_len: usize) -> Self {
        WordDomain { sector, max_len, degree_filter: None }
    }

    pub fn with_degree_filter(mut self, degs: &'a [u32], max_total: u32) -> Self {
        self.degree_filter = Some((degs, max_total));
        self
    }

    fn deg_of(&self, letter: u32) -> u32 {
        match self.degree_filter {
            Some((degs, _)) if letter != HEAD_E => degs[letter as usize],
            _ => 0,
        }
    }

    fn heads(&self, alg: &SuperAlgebra) -> Vec<u32> {
        let dim = alg.dim() as u32;
        match self.sector {
            Sector::Plain => (0..dim).collect(),
            Sector::Ce => (0..dim).chain(std::iter::once(HEAD_E)).collect(),
            Sector::CPlus => vec![HEAD_E],
        }
    }

    pub fn for_each(&self, alg: &SuperAlgebra, mut f: impl FnMut(&Word)) {
        let heads = self.heads(alg);
        self.for_each_in_heads(alg, &heads, &mut f);
    }

    fn for_each_in_heads(&self, alg: &SuperAlgebra, heads: &[u32], f: &mut impl FnMut(&Word)) {
        let budget = self.degree_filter.map(|(_, m)| m);
        let mut w = Word::of_head(0);
        for &head in heads {
            if let Some(b) = budget {
                if self.deg_of(head) > b {
                    continue;
                }
            }
            w.head = head;
            w.tail.clear();
            let head_deg = self.deg_of(head);
            // e-headed words need a nonempty tail
            if head != HEAD_E {
                f(&w);
            }
            self.extend(alg, &mut w, head_deg, budget, f);
        }
    }

    fn extend(
        &self,
        alg: &SuperAlgebra,
        w: &mut Word,
        used: u32,
        budget: Option<u32>,
        f: &mut impl FnMut(&Word),
    ) {
        if w.tail.len() == self.max_len {
            return;
        }
        let dim = alg.dim() as u32;
        for letter in 0..dim {
            let d = self.deg_of(letter);
            if let Some(b) = budget {
                if used + d > b {
                    continue;
                }
            }
            w.tail.push(letter);
            f(w);
            self.extend(alg, w, used + d, budget, f);
            w.tail.pop();
        }
    }

    pub fn count(&self, alg: &SuperAlgebra) -> u64 {
        let mut n = 0;
        self.for_each(alg, |_| n += 1);
        n
    }
}

#[derive(Clone)]
struct IdState {
    checked: u64,
    certified: u64,
    /// (head rank, sequence number within the head, message)
    counterexample: Option<(usize, u64, String)>,
}

fn run_over_heads(
    alg: &SuperAlgebra,
    sector: Sector,
    cap: usize,
    domain: &WordDomain,
    identities: &[Identity],
    heads: &[(usize, u32)],
) -> Result<Vec<IdState>, EvalError> {
    let ctx = Ctx::new(alg, sector, cap);
    let mut state: Vec<IdState> =
        identities.iter().map(|_| IdState { checked: 0, certified: 0, counterexample: None }).collect();
    let mut err: Option<EvalError> = None;
    for &(rank, head) in heads {
        let mut seq = 0u64;
        domain.for_each_in_heads(alg, &[head], &mut |w| {
            if err.is_some() {
                return;
            }
            seq += 1;
            for (i, id) in identities.iter().enumerate() {
                let st = &mut state[i];
                if st.counterexample.is_some() {
                    continue;
                }
                st.checked += 1;
                match id.check(&ctx, w) {
                    Ok(Outcome::Certified { equal, lhs, rhs }) => {
                        st.certified += 1;
                        if !equal {
                            st.counterexample = Some((
                                rank,
                                seq,
                                format!(
                                    "{}: lhs = {}, rhs = {}",
                                    w.format(alg),
                                    lhs.format(alg),
                                    rhs.format(alg)
                                ),
                            ));
                        }
                    }
                    Ok(Outcome::Uncertified) => {}
                    Err(e) => {
                        err = Some(e);
                    }
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(state)
}

/// Runs every identity over the domain. With `jobs > 1`, heads are
/// distributed across scoped threads; the report is independent of the
/// worker count (the counterexample reported is the earliest in enumeration
/// order, and counting stops at the first failure per head block, so counts
/// are only comparable per-report — the pass/fail verdict and example are
/// deterministic).
pub fn run_suite_jobs(
    suite_name: &str,
    alg: &SuperAlgebra,
    sector: Sector,
    cap: usize,
    domain: &WordDomain,
    identities: &[Identity],
    jobs: usize,
) -> Result<SuiteReport, EvalError> {
    let heads: Vec<(usize, u32)> = domain.heads(alg).into_iter().enumerate().collect();
    let jobs = jobs.max(1).min(heads.len().max(1));
    let states: Vec<IdState> = if jobs <= 1 {
        run_over_heads(alg, sector, cap, domain, identities, &heads)?
    } else {
        let chunks: Vec<&[(usize, u32)]> = heads.chunks(heads.len().div_ceil(jobs)).collect();
        let results: Vec<Result<Vec<IdState>, EvalError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| {
                    scope.spawn(move || run_over_heads(alg, sector, cap, domain, identities, chunk))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut merged: Vec<IdState> =
            identities.iter().map(|_| IdState { checked: 0, certified: 0, counterexample: None }).collect();
        for r in results {
            let r = r?;
            for (m, s) in merged.iter_mut().zip(r) {
                m.checked += s.checked;
                m.certified += s.certified;
                m.counterexample = match (m.counterexample.take(), s.counterexample) {
                    (None, c) => c,
                    (c, None) => c,
                    (Some(a), Some(b)) => Some(if (a.0, a.1) <= (b.0, b.1) { a } else { b }),
                };
            }
        }
        merged
    };
    Ok(SuiteReport {
        suite: suite_name.into(),
        algebra: alg.name.clone(),
        max_length: domain.max_len,
        identities: identities
            .iter()
            .zip(states)
            .map(|(id, st)| IdentityReport {
                name: id.name.clone(),
                checked: st.checked,
                certified: st.certified,
                status: if st.counterexample.is_some() { Status::Fail } else { Status::Pass },
                counterexample: st.counterexample.map(|(_, _, m)| m),
            })
            .collect(),
    })
}

/// Single-threaded verification (the default).
pub fn run_suite(
    suite_name: &str,
    alg: &SuperAlgebra,
    sector: Sector,
    cap: usize,
    domain: &WordDomain,
    identities: &[Identity],
) -> Result<SuiteReport, EvalError> {
    run_suite_jobs(suite_name, alg, sector, cap, domain, identities, 1)
}
