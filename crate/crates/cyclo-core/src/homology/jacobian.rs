//! Division by the Jacobian ideal and the reduction of top-degree forms:
//! rewriting `f · vol` modulo the image of the twisted differential trades
//! polynomial degree for powers of u, one division step at a time.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::mf::poly::{Mono, Poly};
use crate::scalars::{Q, Series, PREC_EXACT};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JacobianError {
    #[error("the critical-point conditions fail: {0}")]
    NotCritical(String),
    #[error("Jacobian quotient dimension does not stabilize ({0} at the lower degree vs {1}); the singularity is non-isolated or the truncation is too low")]
    NotIsolatedOrTruncationTooLow(usize, usize),
    #[error("reduction degree failed to decrease (from {0} to {1}); truncation/isolation problem")]
    NonTermination(i64, i64),
}

/// One quotient computation at a fixed degree bound: row space spanned by
/// `m · ∂_i w` with columns the monomials up to the bound, pivoting on the
/// highest monomial first. Rows carry their expression in the generators.
struct Reducer {
    #[allow(dead_code)]
    bound: i64,
    /// col index -> monomial (sorted descending by (degree, lex))
    cols: Vec<Mono>,
    col_of: BTreeMap<Mono, usize>,
    /// echelon rows: sparse (col -> coeff), pivot = first col, scaled to 1
    rows: Vec<(BTreeMap<usize, Q>, Vec<(usize, Mono, Q)>)>,
    /// pivot col -> row index
    pivot_row: BTreeMap<usize, usize>,
}

fn monos_up_to(k: usize, bound: i64) -> Vec<Mono> {
    let mut out = vec![vec![0u16; k]];
    let mut frontier = out.clone();
    for _ in 0..bound.max(0) {
        let mut next = Vec::new();
        for m in &frontier {
            for i in 0..k {
                let mut m2 = m.clone();
                m2[i] += 1;
                next.push(m2);
            }
        }
        next.sort();
        next.dedup();
        out.extend(next.clone());
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

fn mono_deg(m: &Mono) -> i64 {
    m.iter().map(|e| *e as i64).sum()
}

impl Reducer {
    fn build(partials: &[Poly], k: usize, bound: i64) -> Reducer {
        let mut cols = monos_up_to(k, bound);
        // highest degree first so division eats leading monomials
        cols.sort_by(|a, b| (mono_deg(b), b).cmp(&(mono_deg(a), a)));
        let col_of: BTreeMap<Mono, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut red = Reducer { bound, cols, col_of, rows: Vec::new(), pivot_row: BTreeMap::new() };
        for (i, p) in partials.iter().enumerate() {
            let pdeg = p.deg();
            if pdeg < 0 {
                continue;
            }
            for m in monos_up_to(k, bound - pdeg) {
                let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                for (pm, pc) in &p.terms {
                    let prod: Mono = pm.iter().zip(&m).map(|(a, b)| a + b).collect();
                    if let Some(c) = red.col_of.get(&prod) {
                        let e = row.entry(*c).or_insert_with(Q::zero);
                        *e += pc;
                    }
                }
                row.retain(|_, v| !v.is_zero());
                red.insert_row(row, vec![(i, m.clone(), Q::one())]);
            }
        }
        red
    }

    fn insert_row(&mut self, mut row: BTreeMap<usize, Q>, mut combo: Vec<(usize, Mono, Q)>) {
        loop {
            let Some((&pivot, _)) = row.iter().next() else { return };
            if let Some(&r) = self.pivot_row.get(&pivot) {
                let c = row[&pivot].clone();
                let (rvec, rcombo) = &self.rows[r];
                let rvec = rvec.clone();
                let rcombo = rcombo.clone();
                for (col, v) in &rvec {
                    let e = row.entry(*col).or_insert_with(Q::zero);
                    *e -= &(v * &c);
                }
                row.retain(|_, v| !v.is_zero());
                for (i, m, v) in &rcombo {
                    combo.push((*i, m.clone(), &(-v) * &c));
                }
            } else {
                let c = row[&pivot].clone();
                let inv = c.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                for (_, _, v) in combo.iter_mut() {
                    *v *= &inv;
                }
                self.pivot_row.insert(pivot, self.rows.len());
                self.rows.push((row, combo));
                return;
            }
        }
    }

    /// f = remainder + Σ g_i ∂_i w, remainder supported on non-pivot
    /// monomials. Returns (remainder, g).
    fn divide(&self, f: &Poly, n_partials: usize) -> (Poly, Vec<Poly>) {
        let mut vec: BTreeMap<usize, Q> = BTreeMap::new();
        for (m, c) in &f.terms {
            if let Some(col) = self.col_of.get(m) {
                vec.insert(*col, c.clone());
            } else {
                // beyond the bound: keep in the remainder untouched
            }
        }
        let mut g = vec![Poly::zero(&f.vars); n_partials];
        loop {
            let hit = vec.iter().find(|(col, _)| self.pivot_row.contains_key(col)).map(|(c, v)| (*c, v.clone()));
            let Some((pivot, c)) = hit else { break };
            let r = self.pivot_row[&pivot];
            let (rvec, rcombo) = &self.rows[r];
            for (col, v) in rvec {
                let e = vec.entry(*col).or_insert_with(Q::zero);
                *e -= &(v * &c);
            }
            vec.retain(|_, v| !v.is_zero());
            for (i, m, v) in rcombo {
                g[*i].add_term(m.clone(), &(v * &c));
            }
        }
        let mut rem = Poly::zero(&f.vars);
        for (col, c) in vec {
            rem.add_term(self.cols[col].clone(), &c);
        }
        for (m, c) in &f.terms {
            if !self.col_of.contains_key(m) {
                rem.add_term(m.clone(), c);
            }
        }
        (rem, g)
    }

    fn quotient_dim(&self) -> usize {
        self.cols.len() - self.rows.len()
    }

    fn standard_monomials(&self) -> Vec<Mono> {
        let mut out: Vec<Mono> = (0..self.cols.len())
            .filter(|c| !self.pivot_row.contains_key(c))
            .map(|c| self.cols[c].clone())
            .collect();
        out.sort_by_key(|m| (mono_deg(m), m.clone()));
        out
    }
}

/// The validated Jacobian data of a polynomial with (finite-dimensional)
/// Jacobian quotient: the Milnor number, a monomial basis of the quotient,
/// and the division machinery.
pub struct JacobianData {
    pub w: Poly,
    pub partials: Vec<Poly>,
    pub milnor: usize,
    pub basis: Vec<Mono>,
    reducer: Reducer,
    k: usize,
}

impl JacobianData {
    /// Checks the critical-point conditions at the origin and stabilization
    /// of the Jacobian quotient dimension at `max_deg - 1` vs `max_deg`.
    pub fn validate(w: &Poly, max_deg: u32) -> Result<JacobianData, JacobianError> {
        if !w.constant_term().is_zero() {
            return Err(JacobianError::NotCritical("w(0) != 0".into()));
        }
        let k = w.vars.len();
        let partials: Vec<Poly> = (0..k).map(|i| w.derivative(i)).collect();
        for (i, p) in partials.iter().enumerate() {
            if !p.constant_term().is_zero() {
                return Err(JacobianError::NotCritical(format!("∂{}w(0) != 0", i + 1)));
            }
        }
        let lo = Reducer::build(&partials, k, max_deg as i64 - 1);
        let hi = Reducer::build(&partials, k, max_deg as i64);
        let (ql, qh) = (lo.quotient_dim(), hi.quotient_dim());
        if ql != qh {
            return Err(JacobianError::NotIsolatedOrTruncationTooLow(ql, qh));
        }
        // working reducer with slack for the reduction loop
        let bound = max_deg as i64 + w.deg().max(1);
        let reducer = Reducer::build(&partials, k, bound);
        Ok(JacobianData { w: w.clone(), partials, milnor: qh, basis: hi.standard_monomials(), reducer, k })
    }

    /// One division step: f = r + Σ g_i ∂_i w.
    pub fn divide(&self, f: &Poly) -> (Poly, Vec<Poly>) {
        self.reducer.divide(f, self.partials.len())
    }

    /// Reduce the top form `f · dy_1∧...∧dy_k` to coordinates in the basis
    /// `{m · vol}`, with coefficients polynomial in u. Each division step
    /// replaces the ideal part by `u · div(g)` and must strictly lower the
    /// polynomial degree.
    pub fn gd_reduce(&self, f: &Poly) -> Result<BTreeMap<Mono, Series>, JacobianError> {
        let mut out: BTreeMap<Mono, Series> = BTreeMap::new();
        let mut cur = f.clone();
        let mut j: i64 = 0;
        while !cur.is_zero() {
            let prev_deg = cur.deg();
            let (rem, g) = self.divide(&cur);
            for (m, c) in &rem.terms {
                let e = out.entry(m.clone()).or_insert_with(Series::zero);
                *e = e.add(&Series::monomial(c.clone(), j));
            }
            // the trade: ideal part ≡ u · divergence of the multipliers
            let mut div = Poly::zero(&cur.vars);
            for (i, gi) in g.iter().enumerate() {
                div = div.add(&gi.derivative(i));
            }
            if !div.is_zero() && div.deg() >= prev_deg {
                return Err(JacobianError::NonTermination(prev_deg, div.deg()));
            }
            cur = div;
            j += 1;
        }
        // remainders must lie in the quotient basis
        for m in out.keys() {
            debug_assert!(self.basis.contains(m), "remainder off the quotient basis");
        }
        Ok(out)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Coordinates of the reduction as a vector over the quotient basis.
    pub fn gd_reduce_vec(&self, f: &Poly) -> Result<Vec<Series>, JacobianError> {
        let map = self.gd_reduce(f)?;
        Ok(self
            .basis
            .iter()
            .map(|m| map.get(m).cloned().unwrap_or_else(Series::zero))
            .collect())
    }
}

/// Exactness marker for polynomial-in-u entries.
pub fn exact_prec() -> i64 {
    PREC_EXACT
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q::{q, qi};

    fn poly(s: &str, vars: &[&str]) -> Poly {
        let vs: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        Poly::parse(s, &vs).unwrap()
    }

    #[test]
    fn milnor_numbers() {
        let d = JacobianData::validate(&poly("x^2", &["x"]), 4).unwrap();
        assert_eq!(d.milnor, 1);
        assert_eq!(d.basis, vec![vec![0]]);
        let d = JacobianData::validate(&poly("x^3", &["x"]), 6).unwrap();
        assert_eq!(d.milnor, 2);
        assert_eq!(d.basis, vec![vec![0], vec![1]]);
        let d = JacobianData::validate(&poly("x*y", &["x", "y"]), 4).unwrap();
        assert_eq!(d.milnor, 1);
        let d = JacobianData::validate(&poly("x^3 + y^2", &["x", "y"]), 6).unwrap();
        assert_eq!(d.milnor, 2);
    }

    #[test]
    fn rejects_noncritical_and_nonisolated() {
        assert!(matches!(
            JacobianData::validate(&poly("x^2 + 1", &["x"]), 4),
            Err(JacobianError::NotCritical(_))
        ));
        assert!(matches!(
            JacobianData::validate(&poly("x^2 + x", &["x"]), 4),
            Err(JacobianError::NotCritical(_))
        ));
        // x^2 y has a non-isolated critical locus
        assert!(matches!(
            JacobianData::validate(&poly("x^2*y", &["x", "y"]), 6),
            Err(JacobianError::NotIsolatedOrTruncationTooLow(..))
        ));
    }

    #[test]
    fn reduction_oracle_cubic() {
        // hand reductions: x^2 dx -> 0; x^3 dx -> (u/3) dx; x^4 dx -> (2u/3) x dx
        let d = JacobianData::validate(&poly("x^3", &["x"]), 6).unwrap();
        let r = d.gd_reduce(&poly("x^2", &["x"])).unwrap();
        assert!(r.is_empty());
        let r = d.gd_reduce(&poly("x^3", &["x"])).unwrap();
        assert_eq!(r[&vec![0u16]].coeff(1), Some(q(1, 3)));
        let r = d.gd_reduce(&poly("x^4", &["x"])).unwrap();
        assert_eq!(r[&vec![1u16]].coeff(1), Some(q(2, 3)));
        // already reduced stays fixed
        let r = d.gd_reduce(&poly("x", &["x"])).unwrap();
        assert_eq!(r[&vec![1u16]].coeff(0), Some(qi(1)));
    }

    #[test]
    fn reduction_oracle_quadratic() {
        // x^2 dx -> (u/2) dx for w = x^2
        let d = JacobianData::validate(&poly("x^2", &["x"]), 4).unwrap();
        let r = d.gd_reduce(&poly("x^2", &["x"])).unwrap();
        assert_eq!(r[&vec![0u16]].coeff(1), Some(q(1, 2)));
    }

    #[test]
    fn reduction_is_linear_and_idempotent() {
        let d = JacobianData::validate(&poly("x^3", &["x"]), 6).unwrap();
        let f = poly("x^4 + 2*x^3 + x", &["x"]);
        let direct = d.gd_reduce_vec(&f).unwrap();
        let mut sum = vec![Series::zero(); d.milnor];
        for part in ["x^4", "2*x^3", "x"] {
            let v = d.gd_reduce_vec(&poly(part, &["x"])).unwrap();
            for (s, p) in sum.iter_mut().zip(v) {
                *s = s.add(&p);
            }
        }
        assert_eq!(direct, sum);
    }
}
