//! Polynomial differential forms on affine space and their Laurent-in-u
//! series, with the twisted differential and its connection.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::Q;

use super::poly::{Mono, Poly};

/// A form Σ c · m · dy_S with S a strictly increasing index subset encoded
/// as a bitmask. Antisymmetry is canonicalized by sorted subsets with sign
/// absorption.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form {
    pub k: usize,
    /// (subset mask, monomial) -> coefficient
    pub terms: BTreeMap<(u32, Mono), Q>,
}

impl Form {
    pub fn zero(k: usize) -> Self {
        Form { k, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: &Poly) -> Self {
        let k = p.vars.len();
        let mut f = Form::zero(k);
        for (m, c) in &p.terms {
            f.add_term(0, m.clone(), c);
        }
        f
    }

    /// The top form `p · dy_1∧...∧dy_k`.
    pub fn top(p: &Poly) -> Self {
        let k = p.vars.len();
        let mask = (1u32 << k) - 1;
        let mut f = Form::zero(k);
        for (m, c) in &p.terms {
            f.add_term(mask, m.clone(), c);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u32, m: Mono, c: &Q) {
        if c.is_zero() {
            return;
        }
        let key = (mask, m);
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Form) -> Form {
        let mut out = self.clone();
        for ((mask, m), c) in &rhs.terms {
            out.add_term(*mask, m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Form {
        if c.is_zero() {
            return Form::zero(self.k);
        }
        Form { k: self.k, terms: self.terms.iter().map(|(key, v)| (key.clone(), v * c)).collect() }
    }

    pub fn sub(&self, rhs: &Form) -> Form {
        self.add(&rhs.scale(&Q::from_int(-1)))
    }

    /// Multiply by a polynomial (degree-0 form).
    pub fn mul_poly(&self, p: &Poly) -> Form {
        let mut out = Form::zero(self.k);
        for ((mask, m), c) in &self.terms {
            for (pm, pc) in &p.terms {
                let mono = m.iter().zip(pm).map(|(a, b)| a + b).collect();
                out.add_term(*mask, mono, &(c * pc));
            }
        }
        out
    }

    /// Wedge with `dy_i` from the left: `dy_i ∧ (m · dy_S)`.
    fn wedge_dy(&self, i: usize) -> Form {
        let bit = 1u32 << i;
        let mut out = Form::zero(self.k);
        for ((mask, m), c) in &self.terms {
            if mask & bit != 0 {
                continue;
            }
            // move dy_i past the dy_j with j < i already present
            let below = (mask & (bit - 1)).count_ones();
            let coef = if below % 2 == 1 { -c } else { c.clone() };
            out.add_term(mask | bit, m.clone(), &coef);
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.k);
        for ((mask, m), c) in &self.terms {
            for i in 0..self.k {
                if m[i] == 0 {
                    continue;
                }
                let mut m2 = m.clone();
                m2[i] -= 1;
                let part = Form { k: self.k, terms: BTreeMap::from([((*mask, m2), c * &Q::from_int(m[i] as i64))]) };
                out = out.add(&part.wedge_dy(i));
            }
        }
        out
    }

    /// Wedge with `dw` from the left.
    pub fn wedge_dw(&self, w: &Poly) -> Form {
        let mut out = Form::zero(self.k);
        for i in 0..self.k {
            let di = w.derivative(i);
            if di.is_zero() {
                continue;
            }
            out = out.add(&self.mul_poly(&di).wedge_dy(i));
        }
        out
    }

    /// The degree grading used by the connection: multiply each p-form
    /// component by -p/2.
    pub fn gamma(&self) -> Form {
        let mut out = Form::zero(self.k);
        for ((mask, m), c) in &self.terms {
            let p = mask.count_ones() as i64;
            out.add_term(*mask, m.clone(), &(c * &Q::new(-p, 2)));
        }
        out
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((mask, m), c)| {
                let mono = crate::superalg::constructions::mono_name(
                    vars,
                    &m.iter().map(|e| *e as u32).collect::<Vec<_>>(),
                );
                let dys: Vec<String> =
                    (0..vars.len()).filter(|i| mask >> i & 1 == 1).map(|i| format!("d{}", vars[i])).collect();
                let mut s = if c.is_one() && !(mono == "1" && dys.is_empty()) {
                    String::new()
                } else {
                    format!("{c}")
                };
                if mono != "1" {
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&mono);
                }
                if !dys.is_empty() {
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&dys.join("^"));
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.k).map(|i| format!("y{}", i + 1)).collect();
        write!(f, "{}", self.format(&vars))
    }
}

/// Laurent-in-u series of forms (finitely many powers at desk scale).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormSeries {
    pub coeffs: BTreeMap<i64, Form>,
}

impl FormSeries {
    pub fn zero() -> Self {
        FormSeries { coeffs: BTreeMap::new() }
    }

    pub fn from_form(power: i64, f: Form) -> Self {
        let mut s = FormSeries::zero();
        s.add_form(power, f);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Form::is_zero)
    }

    pub fn add_form(&mut self, power: i64, f: Form) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&power) {
            Some(e) => {
                *e = e.add(&f);
                if e.is_zero() {
                    self.coeffs.remove(&power);
                }
            }
            None => {
                self.coeffs.insert(power, f);
            }
        }
    }

    pub fn add(&self, rhs: &FormSeries) -> FormSeries {
        let mut out = self.clone();
        for (p, f) in &rhs.coeffs {
            out.add_form(*p, f.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> FormSeries {
        FormSeries { coeffs: self.coeffs.iter().map(|(p, f)| (*p, f.scale(c))).filter(|(_, f)| !f.is_zero()).collect() }
    }

    pub fn sub(&self, rhs: &FormSeries) -> FormSeries {
        self.add(&rhs.scale(&Q::from_int(-1)))
    }

    pub fn shift(&self, k: i64) -> FormSeries {
        FormSeries { coeffs: self.coeffs.iter().map(|(p, f)| (p + k, f.clone())).collect() }
    }

    /// Apply a form operator coefficientwise.
    pub fn map(&self, f: impl Fn(&Form) -> Form) -> FormSeries {
        let mut out = FormSeries::zero();
        for (p, form) in &self.coeffs {
            out.add_form(*p, f(form));
        }
        out
    }

    /// Formal d/du.
    pub fn ddu(&self) -> FormSeries {
        let mut out = FormSeries::zero();
        for (p, form) in &self.coeffs {
            if *p != 0 {
                out.add_form(p - 1, form.scale(&Q::from_int(*p)));
            }
        }
        out
    }
}

/// The twisted differential `-dw ∧ · + u d`.
pub fn twisted_diff(fs: &FormSeries, w: &Poly) -> FormSeries {
    let mut out = FormSeries::zero();
    for (p, f) in &fs.coeffs {
        out.add_form(*p, f.wedge_dw(w).scale(&Q::from_int(-1)));
        out.add_form(p + 1, f.d());
    }
    out
}

/// The connection `d/du + w/u² + Γ/u` on form series.
pub fn nabla_w(fs: &FormSeries, w: &Poly) -> FormSeries {
    let mut out = fs.ddu();
    for (p, f) in &fs.coeffs {
        out.add_form(p - 2, f.mul_poly(w));
        out.add_form(p - 1, f.gamma());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q::{q, qi};

    fn x_vars() -> Vec<String> {
        vec!["x".into()]
    }

    #[test]
    fn twisted_diff_of_one() {
        let vs = x_vars();
        let w = Poly::parse("x^2", &vs).unwrap();
        let one = FormSeries::from_form(0, Form::from_poly(&Poly::constant(&vs, qi(1))));
        let d = twisted_diff(&one, &w);
        // -dw = -2x dx
        let want = FormSeries::from_form(0, Form::top(&Poly::parse("x", &vs).unwrap()).scale(&qi(-2)));
        assert_eq!(d, want);
    }

    #[test]
    fn twisted_diff_example() {
        // twisted_diff(-x/2, w=x^2) = x^2 dx - (u/2) dx
        let vs = x_vars();
        let w = Poly::parse("x^2", &vs).unwrap();
        let fs = FormSeries::from_form(0, Form::from_poly(&Poly::parse("x", &vs).unwrap()).scale(&q(-1, 2)));
        let d = twisted_diff(&fs, &w);
        let mut want = FormSeries::from_form(0, Form::top(&Poly::parse("x^2", &vs).unwrap()));
        want.add_form(1, Form::top(&Poly::constant(&vs, q(-1, 2))));
        assert_eq!(d, want);
    }

    #[test]
    fn twisted_diff_squares_to_zero() {
        let vs = vec!["x".into(), "y".into()];
        let w = Poly::parse("x^3 + y^2", &vs).unwrap();
        for mono in ["1", "x", "y", "x*y", "x^2*y"] {
            let p = Poly::parse(mono, &vs).unwrap();
            for f in [Form::from_poly(&p), Form::from_poly(&p).wedge_dw(&w)] {
                let fs = FormSeries::from_form(0, f);
                let dd = twisted_diff(&twisted_diff(&fs, &w), &w);
                assert!(dd.is_zero());
            }
        }
    }

    #[test]
    fn nabla_w_on_dx() {
        // ∇(dx) for w = x^2: x^2/u^2 dx - 1/(2u) dx
        let vs = x_vars();
        let w = Poly::parse("x^2", &vs).unwrap();
        let dx = FormSeries::from_form(0, Form::top(&Poly::constant(&vs, qi(1))));
        let r = nabla_w(&dx, &w);
        let mut want = FormSeries::from_form(-2, Form::top(&Poly::parse("x^2", &vs).unwrap()));
        want.add_form(-1, Form::top(&Poly::constant(&vs, q(-1, 2))));
        assert_eq!(r, want);
    }

    #[test]
    fn connection_law_on_twisted_complex() {
        // [∇, -dw+ud] = (1/2u)(-dw+ud) on monomial forms up to degree 6
        for (vars, wtxt) in [(vec!["x".to_string()], "x^3"), (vec!["x".to_string(), "y".to_string()], "x^2 + y^2")] {
            let w = Poly::parse(wtxt, &vars).unwrap();
            let k = vars.len();
            let mut gens: Vec<Form> = Vec::new();
            // monomials of degree <= 6 in each form degree
            let mut monos = vec![vec![0u16; k]];
            for _ in 0..6 {
                let mut next = Vec::new();
                for m in &monos {
                    for i in 0..k {
                        let mut m2 = m.clone();
                        m2[i] += 1;
                        next.push(m2);
                    }
                }
                monos.extend(next.clone());
                monos.sort();
                monos.dedup();
            }
            for m in &monos {
                for mask in 0..1u32 << k {
                    let mut f = Form::zero(k);
                    f.add_term(mask, m.clone(), &qi(1));
                    gens.push(f);
                }
            }
            for g in gens {
                let fs = FormSeries::from_form(0, g);
                let lhs = nabla_w(&twisted_diff(&fs, &w), &w).sub(&twisted_diff(&nabla_w(&fs, &w), &w));
                let rhs = twisted_diff(&fs, &w).shift(-1).scale(&q(1, 2));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn gamma_on_two_form() {
        let vs = vec!["x".into(), "y".into()];
        let top = Form::top(&Poly::constant(&vs, qi(1)));
        assert_eq!(top.gamma(), top.scale(&qi(-1)));
    }
}
