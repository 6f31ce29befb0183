//! Sparse multivariate polynomials over the rationals, with a small
//! expression parser for CLI input.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalars::Q;

pub type Mono = Vec<u16>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Q) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut m = vec![0u16; vars.len()];
        m[i] = 1;
        let mut p = Poly::zero(vars);
        p.terms.insert(m, Q::one());
        p
    }

    pub fn monomial(vars: &[String], m: Mono, c: Q) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.scale(&Q::from_int(-1)))
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, &(ca * cb));
            }
        }
        out
    }

    pub fn deg(&self) -> i64 {
        self.terms.keys().map(|m| m.iter().map(|e| *e as i64).sum()).max().unwrap_or(-1)
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, &(c * &Q::from_int(m[i] as i64)));
        }
        out
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_else(Q::zero)
    }

    /// Parse an ASCII expression (`+ - * ^`, integer or `p/q` coefficients)
    /// over the declared variables.
    pub fn parse(text: &str, vars: &[String]) -> Result<Poly, PolyError> {
        Parser { text: text.as_bytes(), pos: 0, vars }.parse_all()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono = crate::superalg::constructions::mono_name(
                &self.vars,
                &m.iter().map(|e| *e as u32).collect::<Vec<_>>(),
            );
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn parse_all(&mut self) -> Result<Poly, PolyError> {
        let p = self.parse_sum()?;
        self.skip_ws();
        if self.pos != self.text.len() {
            return self.err("trailing input");
        }
        Ok(p)
    }

    fn parse_sum(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.parse_product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_product(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.parse_factor()?);
                }
                // implicit multiplication when a factor follows directly
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => {
                    acc = acc.mul(&self.parse_factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Poly, PolyError> {
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let e: u32 = std::str::from_utf8(&self.text[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| PolyError::Parse { pos: start, msg: "bad exponent".into() })?;
            let mut acc = Poly::constant(self.vars, Q::one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.parse_sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected )");
                }
                self.pos += 1;
                Ok(p)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.parse_factor()?.scale(&Q::from_int(-1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.text.len()
                    && (self.text[self.pos].is_ascii_digit() || self.text[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                let q = Q::parse(s).map_err(|m| PolyError::Parse { pos: start, msg: m })?;
                Ok(Poly::constant(self.vars, q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.text.len()
                    && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var(self.vars, i)),
                    None => Err(PolyError::UnknownVariable(name.into())),
                }
            }
            _ => self.err("expected a factor"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q::{q, qi};

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_simple() {
        let vs = vars(&["x", "y"]);
        let p = Poly::parse("x^3 + 2*x*y - 1/2", &vs).unwrap();
        assert_eq!(p.terms.get(&vec![3, 0]), Some(&qi(1)));
        assert_eq!(p.terms.get(&vec![1, 1]), Some(&qi(2)));
        assert_eq!(p.terms.get(&vec![0, 0]), Some(&q(-1, 2)));
        assert_eq!(p.deg(), 3);
    }

    #[test]
    fn parse_errors() {
        let vs = vars(&["x"]);
        assert!(matches!(Poly::parse("x + z", &vs), Err(PolyError::UnknownVariable(_))));
        assert!(Poly::parse("x +", &vs).is_err());
    }

    #[test]
    fn derivative_and_display() {
        let vs = vars(&["x", "y"]);
        let p = Poly::parse("x^2*y", &vs).unwrap();
        assert_eq!(p.derivative(0), Poly::parse("2*x*y", &vs).unwrap());
        assert_eq!(p.derivative(1), Poly::parse("x^2", &vs).unwrap());
        assert_eq!(format!("{}", Poly::parse("x^2 - y", &vs).unwrap()), "-y + x^2");
    }
}
