//! Truncated Laurent series in `u` over the rationals.
//!
//! A series carries an explicit window `[val_lo, prec)`: coefficients below
//! `val_lo` are exactly zero, coefficients in the window are stored sparsely
//! (zero entries absent), and coefficients at `prec` and above are unknown.
//! Every operation propagates the window pessimistically, so a reported
//! coefficient is always exact.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::q::Q;

/// Sentinel precision for exact (polynomial) values.
pub const PREC_EXACT: i64 = i64::MAX / 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("cannot invert a series that is zero through its window")]
    ZeroLeadingTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    val_lo: i64,
    prec: i64,
    coeffs: BTreeMap<i64, Q>,
}

impl Series {
    pub fn zero() -> Self {
        Series { val_lo: 0, prec: PREC_EXACT, coeffs: BTreeMap::new() }
    }

    pub fn zero_with_prec(prec: i64) -> Self {
        Series { val_lo: prec.saturating_sub(1).min(0), prec, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Self {
        Series::monomial(c, 0)
    }

    pub fn one() -> Self {
        Series::constant(Q::one())
    }

    /// `c * u^k`, exact.
    pub fn monomial(c: Q, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Series { val_lo: k.min(0), prec: PREC_EXACT, coeffs }
    }

    pub fn from_coeffs(entries: Vec<(i64, Q)>, prec: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        let mut lo = 0i64;
        for (k, c) in entries {
            assert!(k < prec, "coefficient beyond precision window");
            lo = lo.min(k);
            if !c.is_zero() {
                let e = coeffs.entry(k).or_insert_with(Q::zero);
                *e += &c;
                if e.is_zero() {
                    coeffs.remove(&k);
                }
            }
        }
        Series { val_lo: lo, prec, coeffs }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= PREC_EXACT
    }

    /// Lowest power with a nonzero stored coefficient; `None` when the series
    /// is zero through its whole window.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn is_zero_through_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when this is exactly the zero series (needs an exact window).
    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }

    /// Coefficient at power `k`; `None` when `k` lies at/above the window.
    pub fn coeff(&self, k: i64) -> Option<Q> {
        if k >= self.prec {
            None
        } else {
            Some(self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero))
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Q)> {
        self.coeffs.iter()
    }

    /// Restrict the window: drop all information at `new_prec` and above.
    pub fn truncate(&self, new_prec: i64) -> Series {
        let prec = self.prec.min(new_prec);
        let coeffs = self.coeffs.iter().filter(|(k, _)| **k < prec).map(|(k, c)| (*k, c.clone())).collect();
        Series { val_lo: self.val_lo.min(prec), prec, coeffs }
    }

    pub fn add(&self, rhs: &Series) -> Series {
        let prec = self.prec.min(rhs.prec);
        let mut coeffs = BTreeMap::new();
        for (k, c) in self.coeffs.iter().chain(rhs.coeffs.iter()) {
            if *k >= prec {
                continue;
            }
            let e = coeffs.entry(*k).or_insert_with(Q::zero);
            *e += c;
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        Series { val_lo: self.val_lo.min(rhs.val_lo).min(prec), prec, coeffs }
    }

    pub fn neg(&self) -> Series {
        Series {
            val_lo: self.val_lo,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Q) -> Series {
        if c.is_zero() {
            return Series { val_lo: self.val_lo, prec: self.prec, coeffs: BTreeMap::new() };
        }
        Series {
            val_lo: self.val_lo,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `u^k` (exact window shift).
    pub fn shift(&self, k: i64) -> Series {
        Series {
            val_lo: self.val_lo.saturating_add(k).min(0).max(-(PREC_EXACT)),
            prec: self.prec.saturating_add(k).min(PREC_EXACT),
            coeffs: self.coeffs.iter().map(|(p, c)| (p + k, c.clone())).collect(),
        }
    }

    /// Effective valuation used for precision propagation: the first nonzero
    /// stored power, or the window end when zero throughout.
    fn val_for_prec(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    pub fn mul(&self, rhs: &Series) -> Series {
        let prec = if self.is_exact() && rhs.is_exact() {
            PREC_EXACT
        } else {
            (self.prec.saturating_add(rhs.val_for_prec()))
                .min(rhs.prec.saturating_add(self.val_for_prec()))
                .min(PREC_EXACT)
        };
        let mut coeffs: BTreeMap<i64, Q> = BTreeMap::new();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &rhs.coeffs {
                let k = ka + kb;
                if k >= prec {
                    continue;
                }
                let e = coeffs.entry(k).or_insert_with(Q::zero);
                *e += &(ca * cb);
            }
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        Series { val_lo: (self.val_lo.saturating_add(rhs.val_lo)).min(0), prec, coeffs }
    }

    /// Formal derivative d/du. Costs one order of precision.
    pub fn ddu(&self) -> Series {
        let prec = if self.is_exact() { PREC_EXACT } else { self.prec - 1 };
        let mut coeffs = BTreeMap::new();
        for (k, c) in &self.coeffs {
            if *k == 0 {
                continue;
            }
            let v = c * &Q::from_int(*k);
            if !v.is_zero() {
                coeffs.insert(k - 1, v);
            }
        }
        Series { val_lo: self.val_lo - 1, prec, coeffs }
    }

    /// Multiplicative inverse to the maximal provable precision.
    pub fn invert(&self) -> Result<Series, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroLeadingTerm)?;
        // self = u^v * (c0 + c1 u + ...), c0 != 0; invert the unit part by
        // the standard recursion, to (prec - v) known orders.
        let unit_prec = if self.is_exact() { PREC_EXACT } else { self.prec - v };
        let order = if unit_prec >= PREC_EXACT {
            // Exact polynomial input: the inverse is a genuine series; cap at
            // a default window (callers needing more should truncate first).
            DEFAULT_EXACT_INV_ORDER
        } else {
            unit_prec
        };
        let c0 = self.coeffs.get(&v).expect("valuation key").clone();
        let c0inv = c0.recip();
        let mut inv: Vec<Q> = Vec::with_capacity(order.max(0) as usize);
        for n in 0..order.max(0) {
            if n == 0 {
                inv.push(c0inv.clone());
                continue;
            }
            // sum_{j=1..n} a_j * inv_{n-j} where a_j = coeff at v+j
            let mut acc = Q::zero();
            for j in 1..=n {
                if let Some(aj) = self.coeffs.get(&(v + j)) {
                    acc += &(aj * &inv[(n - j) as usize]);
                }
            }
            inv.push(-&(&acc * &c0inv));
        }
        let prec = if unit_prec >= PREC_EXACT { DEFAULT_EXACT_INV_ORDER - v } else { self.prec - 2 * v };
        let coeffs = inv
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n as i64 - v, c))
            .collect();
        Ok(Series { val_lo: -v.max(0) - 1, prec, coeffs })
    }

    /// Exact equality on the overlap window; returns the window certified.
    pub fn eq_on_window(&self, rhs: &Series) -> (bool, i64) {
        let prec = self.prec.min(rhs.prec);
        let lo = self.val_lo.min(rhs.val_lo);
        for k in lo..prec.min(lo.saturating_add(4096)) {
            let a = self.coeffs.get(&k);
            let b = rhs.coeffs.get(&k);
            let eq = match (a, b) {
                (None, None) => true,
                (Some(x), None) => x.is_zero(),
                (None, Some(y)) => y.is_zero(),
                (Some(x), Some(y)) => x == y,
            };
            if !eq {
                return (false, prec);
            }
        }
        (true, prec)
    }
}

const DEFAULT_EXACT_INV_ORDER: i64 = 32;

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match *k {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag.is_one() {
                        write!(f, "u")?
                    } else {
                        write!(f, "{mag}*u")?
                    }
                }
                k => {
                    if mag.is_one() {
                        write!(f, "u^{k}")?
                    } else {
                        write!(f, "{mag}*u^{k}")?
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q::{q, qi};

    fn s(entries: &[(i64, i64, i64)], prec: i64) -> Series {
        Series::from_coeffs(entries.iter().map(|(k, n, d)| (*k, q(*n, *d))).collect(), prec)
    }

    #[test]
    fn add_cancellation() {
        // (u^-1 + 1, prec 3) + (-u^-1, prec 3) = (1, prec 3)
        let a = s(&[(-1, 1, 1), (0, 1, 1)], 3);
        let b = s(&[(-1, -1, 1)], 3);
        let c = a.add(&b);
        assert_eq!(c.coeff(0), Some(qi(1)));
        assert_eq!(c.coeff(-1), Some(qi(0)));
        assert_eq!(c.prec(), 3);
    }

    #[test]
    fn add_min_precision() {
        // (u, prec 5) + (0, prec 2) = (u, prec 2)
        let a = s(&[(1, 1, 1)], 5);
        let b = Series::zero_with_prec(2);
        let c = a.add(&b);
        assert_eq!(c.prec(), 2);
        assert_eq!(c.coeff(1), Some(qi(1)));
    }

    #[test]
    fn add_doubling() {
        // (1/2 u^-2, prec 4) + itself = (u^-2, prec 4)
        let a = s(&[(-2, 1, 2)], 4);
        let c = a.add(&a);
        assert_eq!(c.coeff(-2), Some(qi(1)));
        assert_eq!(c.prec(), 4);
    }

    #[test]
    fn mul_basic() {
        // u^-1 * u = 1
        let a = Series::monomial(qi(1), -1);
        let b = Series::monomial(qi(1), 1);
        assert_eq!(a.mul(&b).coeff(0), Some(qi(1)));
        // (1+u, prec 3)*(1-u, prec 3) = 1-u^2, prec 3
        let a = s(&[(0, 1, 1), (1, 1, 1)], 3);
        let b = s(&[(0, 1, 1), (1, -1, 1)], 3);
        let c = a.mul(&b);
        assert_eq!(c.prec(), 3);
        assert_eq!(c.coeff(0), Some(qi(1)));
        assert_eq!(c.coeff(1), Some(qi(0)));
        assert_eq!(c.coeff(2), Some(qi(-1)));
    }

    #[test]
    fn mul_precision_bound() {
        // (u^-2, prec 2) * (u, prec 5) = u^-1 with prec min(2+1, 5-2) = 3
        let a = s(&[(-2, 1, 1)], 2);
        let b = s(&[(1, 1, 1)], 5);
        let c = a.mul(&b);
        assert_eq!(c.coeff(-1), Some(qi(1)));
        assert_eq!(c.prec(), 3);
    }

    #[test]
    fn derivative() {
        let a = Series::monomial(qi(1), 2);
        assert_eq!(a.ddu().coeff(1), Some(qi(2)));
        let b = Series::monomial(qi(1), -1);
        assert_eq!(b.ddu().coeff(-2), Some(qi(-1)));
        let c = Series::constant(qi(5));
        assert!(c.ddu().is_zero_through_window());
        // precision drops by one
        let d = s(&[(0, 1, 1)], 4);
        assert_eq!(d.ddu().prec(), 3);
    }

    #[test]
    fn invert_monomial() {
        let a = Series::monomial(qi(1), 1);
        let inv = a.invert().unwrap();
        assert_eq!(inv.coeff(-1), Some(qi(1)));
    }

    #[test]
    fn invert_geometric() {
        // invert(1-u, prec 3) = 1 + u + u^2 (prec 3)
        let a = s(&[(0, 1, 1), (1, -1, 1)], 3);
        let inv = a.invert().unwrap();
        assert_eq!(inv.prec(), 3);
        for k in 0..3 {
            assert_eq!(inv.coeff(k), Some(qi(1)));
        }
    }

    #[test]
    fn invert_precision_bookkeeping() {
        // invert(2u^2, prec 6) = 1/2 u^-2 with prec 6 - 2*2 = 2
        let a = s(&[(2, 2, 1)], 6);
        let inv = a.invert().unwrap();
        assert_eq!(inv.coeff(-2), Some(q(1, 2)));
        assert_eq!(inv.prec(), 2);
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(Series::zero_with_prec(3).invert(), Err(SeriesError::ZeroLeadingTerm));
    }

    #[test]
    fn mul_inverse_is_one_on_overlap() {
        let a = s(&[(1, 2, 1), (2, -1, 3), (4, 7, 2)], 9);
        let inv = a.invert().unwrap();
        let prod = a.mul(&inv);
        let (eq, _) = prod.eq_on_window(&Series::one().truncate(prod.prec()));
        assert!(eq);
    }

    #[test]
    fn display_format() {
        let a = s(&[(-1, -1, 6), (1, 1, 3)], 8);
        assert_eq!(format!("{a}"), "-1/6*u^-1 + 1/3*u");
    }
}
