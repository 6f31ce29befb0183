//! The Koszul-type dg algebra of a polynomial with a chosen decomposition
//! `w = Σ y_i w_i`: the truncated tensor of the polynomial ring with the
//! endomorphisms of the odd-variable space, differential given by the
//! super-commutator with `D(w) = Σ (y_i ∂θ_i + w_i θ_i)`.

use thiserror::Error;

use crate::homology::jacobian::{JacobianData, JacobianError};
use crate::scalars::Q;
use crate::superalg::constructions::{theta_del_operator, theta_mul_operator};
use crate::superalg::{
    elem_normalize, end_odd_variables, poly_algebra, tensor, AlgebraError, Elem, SuperAlgebra,
};

use super::poly::{Mono, Poly};

#[derive(Debug, Error)]
pub enum MfError {
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("decomposition mismatch: Σ y_i w_i differs from w by {0}")]
    BadDecomposition(String),
    #[error("monomial of degree > max_deg in input")]
    DegreeOverflow,
}

/// `w = Σ y_i w_i` with the defect checked exactly.
#[derive(Clone, Debug)]
pub struct PolyDecomposition {
    pub parts: Vec<Poly>,
}

impl PolyDecomposition {
    pub fn check(w: &Poly, parts: Vec<Poly>) -> Result<PolyDecomposition, MfError> {
        let k = w.vars.len();
        assert_eq!(parts.len(), k, "one part per variable");
        let mut sum = Poly::zero(&w.vars);
        for (i, p) in parts.iter().enumerate() {
            sum = sum.add(&Poly::var(&w.vars, i).mul(p));
        }
        let defect = sum.sub(w);
        if !defect.is_zero() {
            return Err(MfError::BadDecomposition(format!("{defect}")));
        }
        Ok(PolyDecomposition { parts })
    }

    /// Greedy default: each monomial of w is divided by its first variable.
    pub fn greedy(w: &Poly) -> Result<PolyDecomposition, MfError> {
        let k = w.vars.len();
        let mut parts = vec![Poly::zero(&w.vars); k];
        for (m, c) in &w.terms {
            let Some(i) = (0..k).find(|i| m[*i] > 0) else {
                return Err(MfError::BadDecomposition("constant term".into()));
            };
            let mut m2 = m.clone();
            m2[i] -= 1;
            parts[i].add_term(m2, c);
        }
        PolyDecomposition::check(w, parts)
    }
}

/// The dg algebra of the factorization, plus the bookkeeping needed by the
/// trace and the de Rham comparison maps.
pub struct MfAlgebra {
    pub alg: SuperAlgebra,
    pub poly_alg: SuperAlgebra,
    pub jac: JacobianData,
    pub w: Poly,
    pub decomposition: PolyDecomposition,
    pub k: usize,
    pub dim_v: usize,
    pub max_deg: u32,
    /// D(w) as an element of the tensor algebra.
    pub dw_elem: Elem,
    /// w ⊗ 1 as an element of the tensor algebra.
    pub w_elem_tensor: Elem,
    /// w as an element of the truncated polynomial algebra.
    pub w_elem_poly: Elem,
    /// polynomial degree per tensor basis index (for enumeration windows)
    pub degrees_tensor: Vec<u32>,
    /// polynomial degree per poly-algebra basis index
    pub degrees_poly: Vec<u32>,
    mono_index: std::collections::BTreeMap<Mono, u32>,
    n_end: usize,
}

impl MfAlgebra {
    /// Validates the polynomial and assembles the truncated dg algebra.
    pub fn build(w: &Poly, dec: PolyDecomposition, max_deg: u32) -> Result<MfAlgebra, MfError> {
        let jac = JacobianData::validate(w, max_deg)?;
        let k = w.vars.len();
        let dim_v = 1usize << k;
        if w.deg() > max_deg as i64 {
            return Err(MfError::DegreeOverflow);
        }
        let poly_alg = poly_algebra(&w.vars, max_deg);
        let end = end_odd_variables(k);
        let plain = tensor(&poly_alg, &end);
        // index maps
        let mut mono_index = std::collections::BTreeMap::new();
        for idx in 0..poly_alg.dim() as u32 {
            let name = poly_alg.basis_name(idx).to_string();
            // reconstruct the exponent vector by scanning degrees
            let m = mono_from_name(&name, &w.vars);
            mono_index.insert(m, idx);
        }
        let n_end = end.dim();
        let to_tensor = |p: &Poly, e: &Elem| -> Result<Elem, MfError> {
            let mut terms = Vec::new();
            for (m, c) in &p.terms {
                let mi = mono_index.get(m).ok_or(MfError::DegreeOverflow)?;
                for (ei, ec) in e {
                    terms.push((mi * n_end as u32 + ei, c * ec));
                }
            }
            Ok(elem_normalize(terms))
        };
        // D(w) = Σ_i (y_i ⊗ ∂θ_i + w_i ⊗ θ_i)
        let mut dw_elem: Elem = Vec::new();
        for i in 0..k {
            let yi = Poly::var(&w.vars, i);
            let del = theta_del_operator(k, i);
            let mul = theta_mul_operator(k, i);
            dw_elem = crate::superalg::elem_add(&dw_elem, &to_tensor(&yi, &del)?);
            dw_elem = crate::superalg::elem_add(&dw_elem, &to_tensor(&dec.parts[i], &mul)?);
        }
        let alg = plain.set_differential_commutator(&dw_elem)?;
        // D(w)^2 = w · unit within the truncation
        let unit = alg.unit().cloned().expect("tensor of unital algebras");
        let w_elem_tensor = {
            let mut terms = Vec::new();
            for (m, c) in &w.terms {
                let mi = mono_index.get(m).ok_or(MfError::DegreeOverflow)?;
                for (ui, uc) in &unit {
                    // unit = Σ 1⊗E_ii; shift the mono part
                    let end_part = ui % n_end as u32;
                    let mono_part = ui / n_end as u32;
                    debug_assert_eq!(mono_part, 0);
                    terms.push((mi * n_end as u32 + end_part, c * uc));
                }
            }
            elem_normalize(terms)
        };
        if let Some(dsq) = alg.mul_elem(&dw_elem, &dw_elem) {
            if dsq != w_elem_tensor {
                return Err(MfError::BadDecomposition("D(w)^2 != w".into()));
            }
        }
        let w_elem_poly = {
            let mut terms = Vec::new();
            for (m, c) in &w.terms {
                terms.push((*mono_index.get(m).ok_or(MfError::DegreeOverflow)?, c.clone()));
            }
            elem_normalize(terms)
        };
        let degrees_poly: Vec<u32> = (0..poly_alg.dim() as u32)
            .map(|i| mono_deg(&mono_from_name(poly_alg.basis_name(i), &w.vars)))
            .collect();
        let degrees_tensor: Vec<u32> =
            (0..alg.dim()).map(|i| degrees_poly[i / n_end]).collect();
        Ok(MfAlgebra {
            alg,
            poly_alg,
            jac,
            w: w.clone(),
            decomposition: dec,
            k,
            dim_v,
            max_deg,
            dw_elem,
            w_elem_tensor,
            w_elem_poly,
            degrees_tensor,
            degrees_poly,
            mono_index,
            n_end,
        })
    }

    /// Split a tensor basis index into (poly index, row, column) of the
    /// matrix-unit part.
    pub fn split(&self, idx: u32) -> (u32, usize, usize) {
        let mono = idx / self.n_end as u32;
        let e = idx as usize % self.n_end;
        (mono, e / self.dim_v, e % self.dim_v)
    }

    /// Parity of the `row`-th basis vector of the odd-variable space.
    pub fn v_parity(&self, i: usize) -> u8 {
        (i.count_ones() % 2) as u8
    }

    pub fn mono_index(&self, m: &Mono) -> Option<u32> {
        self.mono_index.get(m).copied()
    }

    pub fn poly_basis_mono(&self, idx: u32) -> Mono {
        mono_from_name(self.poly_alg.basis_name(idx), &self.w.vars)
    }
}

fn mono_deg(m: &Mono) -> u32 {
    m.iter().map(|e| *e as u32).sum()
}

/// Inverse of `mono_name` for the generated polynomial basis.
fn mono_from_name(name: &str, vars: &[String]) -> Mono {
    let mut m = vec![0u16; vars.len()];
    if name == "1" {
        return m;
    }
    for part in name.split('*') {
        let (var, exp) = match part.split_once('^') {
            Some((v, e)) => (v, e.parse::<u16>().expect("basis exponent")),
            None => (part, 1),
        };
        let i = vars.iter().position(|v| v == var).expect("basis variable");
        m[i] += exp;
    }
    m
}

/// Full validation report for a polynomial at a truncation degree.
pub fn validate_w(w: &Poly, max_deg: u32) -> Result<JacobianData, JacobianError> {
    JacobianData::validate(w, max_deg)
}

/// Convenience: w as an `Elem` of a standalone truncated polynomial algebra.
pub fn poly_to_elem(p: &Poly, alg: &SuperAlgebra) -> Option<Elem> {
    let mut terms = Vec::new();
    for (m, c) in &p.terms {
        let name = crate::superalg::constructions::mono_name(
            &p.vars,
            &m.iter().map(|e| *e as u32).collect::<Vec<_>>(),
        );
        terms.push((alg.basis_index(&name)?, c.clone()));
    }
    Some(elem_normalize(terms))
}

#[allow(unused)]
fn unused_q() -> Q {
    Q::zero()
}
