//! Z/2-graded dg algebras with explicit basis and sparse structure constants.
//!
//! All target algebras are small, so products and differentials are stored
//! as tables indexed by basis pairs. Truncated algebras mark products that
//! escape the degree cutoff as overflowed instead of dropping them; every
//! downstream identity check treats an overflowed lookup as "uncertified"
//! rather than zero.

pub mod build;
pub mod constructions;

pub use build::{build_algebra, load_algebra_json, AlgebraSpec};
pub use constructions::{end_odd_variables, poly_algebra, tensor, theta_basis_names};

use std::fmt;

use thiserror::Error;

use crate::scalars::Q;

/// Sparse rational combination of basis elements, sorted by index,
/// no zero coefficients.
pub type Elem = Vec<(u32, Q)>;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invalid algebra: {axiom} fails at {witness}")]
    InvalidAlgebra { axiom: String, witness: String },
    #[error("differential does not square to zero: [D^2, {witness}] != 0")]
    NotSquareZero { witness: String },
    #[error("expected an odd element for the commutator differential")]
    NotOdd,
    #[error("algebra file error: {0}")]
    BadSpec(String),
}

/// Product/differential table entry. `Overflow` marks results escaping a
/// degree truncation; identity checks must skip inputs that reach one.
#[derive(Clone, Debug, PartialEq)]
pub enum TableEntry {
    Val(Elem),
    Overflow,
}

impl TableEntry {
    pub fn zero() -> Self {
        TableEntry::Val(Vec::new())
    }
    pub fn as_val(&self) -> Option<&Elem> {
        match self {
            TableEntry::Val(e) => Some(e),
            TableEntry::Overflow => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    pub name: String,
    basis: Vec<String>,
    parity: Vec<u8>,
    zdeg: Option<Vec<i64>>,
    mult: Vec<TableEntry>,
    diff: Vec<TableEntry>,
    unit: Option<Elem>,
    /// Basis index of an adjoined unit (set by `unitalize`).
    adjoined_unit: Option<u32>,
}

pub fn elem_normalize(mut terms: Vec<(u32, Q)>) -> Elem {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: Elem = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((j, cc)) if *j == i => {
                *cc += &c;
                if cc.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn elem_add(a: &Elem, b: &Elem) -> Elem {
    let mut terms = a.clone();
    terms.extend(b.iter().cloned());
    elem_normalize(terms)
}

pub fn elem_scale(a: &Elem, c: &Q) -> Elem {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

pub fn elem_single(i: u32) -> Elem {
    vec![(i, Q::one())]
}

impl SuperAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_name(&self, i: u32) -> &str {
        &self.basis[i as usize]
    }

    pub fn basis_index(&self, name: &str) -> Option<u32> {
        self.basis.iter().position(|b| b == name).map(|i| i as u32)
    }

    pub fn parity(&self, i: u32) -> u8 {
        self.parity[i as usize]
    }

    /// Parity of the suspension s(a): flipped.
    pub fn s_parity(&self, i: u32) -> u8 {
        self.parity[i as usize] ^ 1
    }

    pub fn zdeg(&self, i: u32) -> Option<i64> {
        self.zdeg.as_ref().map(|z| z[i as usize])
    }

    pub fn has_zgrading(&self) -> bool {
        self.zdeg.is_some()
    }

    pub fn unit(&self) -> Option<&Elem> {
        self.unit.as_ref()
    }

    pub fn adjoined_unit(&self) -> Option<u32> {
        self.adjoined_unit
    }

    pub fn mul_basis(&self, i: u32, j: u32) -> &TableEntry {
        &self.mult[i as usize * self.basis.len() + j as usize]
    }

    pub fn diff_basis(&self, i: u32) -> &TableEntry {
        &self.diff[i as usize]
    }

    /// Product of combinations; `None` when any needed product overflows.
    pub fn mul_elem(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        let mut terms = Vec::new();
        for (i, ca) in a {
            for (j, cb) in b {
                match self.mul_basis(*i, *j) {
                    TableEntry::Overflow => return None,
                    TableEntry::Val(e) => {
                        let c = ca * cb;
                        for (k, v) in e {
                            terms.push((*k, v * &c));
                        }
                    }
                }
            }
        }
        Some(elem_normalize(terms))
    }

    pub fn diff_elem(&self, a: &Elem) -> Option<Elem> {
        let mut terms = Vec::new();
        for (i, c) in a {
            match self.diff_basis(*i) {
                TableEntry::Overflow => return None,
                TableEntry::Val(e) => {
                    for (k, v) in e {
                        terms.push((*k, v * c));
                    }
                }
            }
        }
        Some(elem_normalize(terms))
    }

    /// Parity of a homogeneous combination; `None` for zero or mixed parity.
    pub fn elem_parity(&self, a: &Elem) -> Option<u8> {
        let mut p = None;
        for (i, _) in a {
            let pi = self.parity(*i);
            match p {
                None => p = Some(pi),
                Some(q) if q != pi => return None,
                _ => {}
            }
        }
        p
    }

    pub fn format_elem(&self, a: &Elem) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (i, c)) in a.iter().enumerate() {
            if n > 0 {
                s.push_str(" + ");
            }
            if c.is_one() {
                s.push_str(self.basis_name(*i));
            } else {
                s.push_str(&format!("{}*{}", c, self.basis_name(*i)));
            }
        }
        s
    }

    /// Checks every construction-time axiom on basis tuples, skipping paths
    /// through overflowed products. Reports the first violated axiom with a
    /// witnessing tuple.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.basis.len() as u32;
        // parity additivity and z-degree additivity under mult
        for i in 0..n {
            for j in 0..n {
                if let TableEntry::Val(e) = self.mul_basis(i, j) {
                    let want = (self.parity(i) + self.parity(j)) % 2;
                    for (k, _) in e {
                        if self.parity(*k) != want {
                            return Err(AlgebraError::InvalidAlgebra {
                                axiom: "parity additivity |ab| = |a|+|b|".into(),
                                witness: format!("({}, {})", self.basis_name(i), self.basis_name(j)),
                            });
                        }
                        if let Some(z) = &self.zdeg {
                            if z[*k as usize] != z[i as usize] + z[j as usize] {
                                return Err(AlgebraError::InvalidAlgebra {
                                    axiom: "z-degree additivity".into(),
                                    witness: format!("({}, {})", self.basis_name(i), self.basis_name(j)),
                                });
                            }
                        }
                    }
                }
            }
        }
        // differential is odd, degree +1, and squares to zero
        for i in 0..n {
            if let TableEntry::Val(e) = self.diff_basis(i) {
                for (k, _) in e {
                    if self.parity(*k) != (self.parity(i) + 1) % 2 {
                        return Err(AlgebraError::InvalidAlgebra {
                            axiom: "differential is odd".into(),
                            witness: self.basis_name(i).into(),
                        });
                    }
                    if let Some(z) = &self.zdeg {
                        if z[*k as usize] != z[i as usize] + 1 {
                            return Err(AlgebraError::InvalidAlgebra {
                                axiom: "differential has degree +1".into(),
                                witness: self.basis_name(i).into(),
                            });
                        }
                    }
                }
                if let Some(dd) = self.diff_elem(e) {
                    if !dd.is_empty() {
                        return Err(AlgebraError::InvalidAlgebra {
                            axiom: "d∘d = 0".into(),
                            witness: self.basis_name(i).into(),
                        });
                    }
                }
            }
        }
        // Leibniz rule on basis pairs
        for i in 0..n {
            for j in 0..n {
                let (TableEntry::Val(dij), TableEntry::Val(di), TableEntry::Val(dj)) =
                    (self.mul_basis(i, j), self.diff_basis(i), self.diff_basis(j))
                else {
                    continue;
                };
                let Some(lhs) = self.diff_elem(dij) else { continue };
                let Some(t1) = self.mul_elem(di, &elem_single(j)) else { continue };
                let sign = if self.parity(i) == 1 { Q::from_int(-1) } else { Q::one() };
                let Some(t2) = self.mul_elem(&elem_single(i), dj) else { continue };
                let rhs = elem_add(&t1, &elem_scale(&t2, &sign));
                if lhs != rhs {
                    return Err(AlgebraError::InvalidAlgebra {
                        axiom: "Leibniz rule".into(),
                        witness: format!("({}, {})", self.basis_name(i), self.basis_name(j)),
                    });
                }
            }
        }
        // associativity on basis triples
        for i in 0..n {
            for j in 0..n {
                let TableEntry::Val(ij) = self.mul_basis(i, j) else { continue };
                for k in 0..n {
                    let TableEntry::Val(jk) = self.mul_basis(j, k) else { continue };
                    let Some(lhs) = self.mul_elem(ij, &elem_single(k)) else { continue };
                    let Some(rhs) = self.mul_elem(&elem_single(i), jk) else { continue };
                    if lhs != rhs {
                        return Err(AlgebraError::InvalidAlgebra {
                            axiom: "associativity".into(),
                            witness: format!(
                                "({}, {}, {})",
                                self.basis_name(i),
                                self.basis_name(j),
                                self.basis_name(k)
                            ),
                        });
                    }
                }
            }
        }
        // unit acts as identity
        if let Some(u) = &self.unit {
            for i in 0..n {
                let e = elem_single(i);
                if self.mul_elem(u, &e) != Some(e.clone()) || self.mul_elem(&e, u) != Some(e.clone()) {
                    return Err(AlgebraError::InvalidAlgebra {
                        axiom: "unit".into(),
                        witness: self.basis_name(i).into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Adjoin an even central unit `e` (appended as the last basis element).
    pub fn unitalize(&self) -> SuperAlgebra {
        let n = self.basis.len();
        let e = n as u32;
        let dim = n + 1;
        let mut mult = vec![TableEntry::zero(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                mult[i * dim + j] = self.mult[i * n + j].clone();
            }
        }
        for i in 0..n as u32 {
            mult[i as usize * dim + n] = TableEntry::Val(elem_single(i));
            mult[n * dim + i as usize] = TableEntry::Val(elem_single(i));
        }
        mult[n * dim + n] = TableEntry::Val(elem_single(e));
        let mut diff = self.diff.clone();
        diff.push(TableEntry::zero());
        let mut basis = self.basis.clone();
        basis.push("e".into());
        let mut parity = self.parity.clone();
        parity.push(0);
        let zdeg = self.zdeg.clone().map(|mut z| {
            z.push(0);
            z
        });
        SuperAlgebra {
            name: format!("{}^e", self.name),
            basis,
            parity,
            zdeg,
            mult,
            diff,
            unit: Some(elem_single(e)),
            adjoined_unit: Some(e),
        }
    }

    /// Same space, product `a *op b = (-1)^{|a||b|} b a`, same differential.
    pub fn opposite(&self) -> SuperAlgebra {
        let n = self.basis.len();
        let mut mult = vec![TableEntry::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                mult[i * n + j] = match &self.mult[j * n + i] {
                    TableEntry::Overflow => TableEntry::Overflow,
                    TableEntry::Val(e) => {
                        let sign = if self.parity[i] == 1 && self.parity[j] == 1 {
                            Q::from_int(-1)
                        } else {
                            Q::one()
                        };
                        TableEntry::Val(elem_scale(e, &sign))
                    }
                };
            }
        }
        SuperAlgebra {
            name: format!("{}^op", self.name),
            basis: self.basis.clone(),
            parity: self.parity.clone(),
            zdeg: self.zdeg.clone(),
            mult,
            diff: self.diff.clone(),
            unit: self.unit.clone(),
            adjoined_unit: self.adjoined_unit,
        }
    }

    /// Replace the differential by the super-commutator `a -> Da - (-1)^{|a|} a D`.
    /// `d_elem` must be odd and its square must be central on the tracked window.
    pub fn set_differential_commutator(&self, d_elem: &Elem) -> Result<SuperAlgebra, AlgebraError> {
        if self.elem_parity(d_elem) != Some(1) {
            return Err(AlgebraError::NotOdd);
        }
        let n = self.basis.len() as u32;
        let mut diff = Vec::with_capacity(n as usize);
        for i in 0..n {
            let a = elem_single(i);
            let left = self.mul_elem(d_elem, &a);
            let right = self.mul_elem(&a, d_elem);
            diff.push(match (left, right) {
                (Some(l), Some(r)) => {
                    let sign = if self.parity(i) == 1 { Q::one() } else { Q::from_int(-1) };
                    TableEntry::Val(elem_add(&l, &elem_scale(&r, &sign)))
                }
                _ => TableEntry::Overflow,
            });
        }
        let out = SuperAlgebra { diff, ..self.clone() };
        // [D^2, a] = 0 on every basis element where both products are tracked
        if let Some(dsq) = out.mul_elem(d_elem, d_elem) {
            for i in 0..n {
                let a = elem_single(i);
                if let (Some(l), Some(r)) = (out.mul_elem(&dsq, &a), out.mul_elem(&a, &dsq)) {
                    if l != r {
                        return Err(AlgebraError::NotSquareZero {
                            witness: out.basis_name(i).into(),
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

#[cfg(test)]
pub mod tests;
