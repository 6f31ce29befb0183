//! Words and chains of the cyclic complexes.
//!
//! A word is `a0[a1|...|an]`: a head letter and a tail of suspended letters.
//! Three sectors share the representation:
//!
//! * `Plain`  — all letters are basis elements of the ambient algebra
//!   (used for the unital complex and for identity checks over the
//!   unitalized algebra, where the adjoined unit is an ordinary letter);
//! * `Ce`     — the normalized extended complex: the head is a basis
//!   element or the external marker `e`, tails never contain `e`;
//! * `CPlus`  — the `e`-headed part of `Ce`.

use std::fmt;

use smallvec::SmallVec;

use crate::scalars::Q;
use crate::superalg::SuperAlgebra;

/// Head marker for the adjoined unit in the `Ce` sector.
pub const HEAD_E: u32 = u32::MAX;

pub type Tail = SmallVec<[u32; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub head: u32,
    pub tail: Tail,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Plain,
    Ce,
    CPlus,
}

impl Word {
    pub fn new(head: u32, tail: impl Into<Tail>) -> Self {
        Word { head, tail: tail.into() }
    }

    pub fn of_head(head: u32) -> Self {
        Word { head, tail: SmallVec::new() }
    }

    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_e_headed(&self) -> bool {
        self.head == HEAD_E
    }

    /// Letter at position `i` (0 = head); `HEAD_E` only at position 0.
    pub fn letter(&self, i: usize) -> u32 {
        if i == 0 {
            self.head
        } else {
            self.tail[i - 1]
        }
    }

    pub fn format(&self, alg: &SuperAlgebra) -> String {
        let head = if self.is_e_headed() { "e".to_string() } else { alg.basis_name(self.head).to_string() };
        if self.tail.is_empty() {
            head
        } else {
            let tail: Vec<&str> = self.tail.iter().map(|i| alg.basis_name(*i)).collect();
            format!("{head}[{}]", tail.join("|"))
        }
    }
}

impl fmt::Debug for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Plain => write!(f, "C"),
            Sector::Ce => write!(f, "Ce"),
            Sector::CPlus => write!(f, "C+"),
        }
    }
}

/// Sparse rational combination of words, sorted, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain {
    terms: Vec<(Word, Q)>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain { terms: Vec::new() }
    }

    pub fn of_word(w: Word) -> Self {
        Chain { terms: vec![(w, Q::one())] }
    }

    pub fn from_terms(terms: Vec<(Word, Q)>) -> Self {
        let mut c = Chain { terms };
        c.normalize();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Word, Q)] {
        &self.terms
    }

    pub fn push_raw(&mut self, w: Word, c: Q) {
        if !c.is_zero() {
            self.terms.push((w, c));
        }
    }

    pub fn normalize(&mut self) {
        self.terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Word, Q)> = Vec::with_capacity(self.terms.len());
        for (w, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((lw, lc)) if *lw == w => {
                    *lc += &c;
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        out.push((w, c));
                    }
                }
            }
        }
        self.terms = out;
    }

    pub fn add(&self, rhs: &Chain) -> Chain {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        Chain::from_terms(terms)
    }

    pub fn scale(&self, c: &Q) -> Chain {
        if c.is_zero() {
            return Chain::zero();
        }
        Chain { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn sub(&self, rhs: &Chain) -> Chain {
        self.add(&rhs.scale(&Q::from_int(-1)))
    }

    pub fn format(&self, alg: &SuperAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    w.format(alg)
                } else {
                    format!("{}*{}", c, w.format(alg))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Result of applying an operator: the reachable part of the image plus a
/// flag telling whether anything escaped the length cap or a truncated
/// product. A set flag invalidates equality assertions on that input.
#[derive(Clone, Debug)]
pub struct ApplyResult {
    pub chain: Chain,
    pub overflow: bool,
}

impl ApplyResult {
    pub fn certified(chain: Chain) -> Self {
        ApplyResult { chain, overflow: false }
    }
}
