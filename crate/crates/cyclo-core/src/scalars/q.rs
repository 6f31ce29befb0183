//! Exact rational numbers.
//!
//! `Q` keeps numerator/denominator in `i64` as long as they fit and silently
//! promotes to arbitrary precision on overflow, so the operator-identity
//! engine stays fast on the (tiny) coefficients that dominate in practice
//! while linear algebra with large intermediate entries stays correct.
//!
//! Invariants: always in lowest terms, denominator > 0.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

#[derive(Clone, Debug)]
pub struct Q(Repr);

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub fn zero() -> Self {
        Q(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Q(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Q(Repr::Small(n, 1))
    }

    /// `n/d`, reduced. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let s = if d < 0 { -1 } else { 1 };
        let g = gcd_i64(n, d).max(1);
        Q(Repr::Small(s * (n / g), (d / g).abs()))
    }

    fn from_big(r: BigRational) -> Self {
        // Demote when it fits so the fast path stays in play.
        if let (Some(n), Some(d)) = (i64::try_from(r.numer()).ok(), i64::try_from(r.denom()).ok()) {
            Q(Repr::Small(n, d))
        } else {
            Q(Repr::Big(Box::new(r)))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n == 0,
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(n, d) => *n == 1 && *d == 1,
            Repr::Big(b) => b.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Integer value if this rational is an integer fitting in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            Repr::Small(..) => None,
            Repr::Big(b) => {
                if b.is_integer() {
                    i64::try_from(b.numer()).ok()
                } else {
                    None
                }
            }
        }
    }

    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "division by zero");
        match &self.0 {
            Repr::Small(n, d) => {
                let s = if *n < 0 { -1 } else { 1 };
                Q(Repr::Small(s * d, n.abs()))
            }
            Repr::Big(b) => Q::from_big(b.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Q {
        let mut acc = Q::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parse "p", "-p", or "p/q".
    pub fn parse(s: &str) -> Result<Q, String> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| format!("bad rational: {s}"))?;
            let d: i128 = d.trim().parse().map_err(|_| format!("bad rational: {s}"))?;
            if d == 0 {
                return Err(format!("zero denominator: {s}"));
            }
            Ok(Q::from_big(BigRational::new(BigInt::from(n), BigInt::from(d))))
        } else {
            let n: i128 = s.parse().map_err(|_| format!("bad rational: {s}"))?;
            Ok(Q::from_big(BigRational::from_integer(BigInt::from(n))))
        }
    }
}

impl FromStr for Q {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Q::parse(s)
    }
}

impl Default for Q {
    fn default() -> Self {
        Q::zero()
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            _ => self.to_big() == other.to_big(),
        }
    }
}
impl Eq for Q {}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Q {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                // a/b vs c/d with b,d > 0; compare in i128 (no overflow).
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

macro_rules! small_binop {
    ($a:ident, $b:ident, $na:ident, $da:ident, $nb:ident, $db:ident, $small:expr, $big:expr) => {
        match (&$a.0, &$b.0) {
            (Repr::Small($na, $da), Repr::Small($nb, $db)) => {
                let ($na, $da, $nb, $db) =
                    (*$na as i128, *$da as i128, *$nb as i128, *$db as i128);
                $small
            }
            _ => $big,
        }
    };
}

fn reduce_i128(n: i128, d: i128) -> Q {
    debug_assert!(d > 0);
    let mut a = n.abs();
    let mut b = d;
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    let g = a.max(1);
    let (n, d) = (n / g, d / g);
    if let (Ok(n), Ok(d)) = (i64::try_from(n), i64::try_from(d)) {
        Q(Repr::Small(n, d))
    } else {
        Q(Repr::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))))
    }
}

impl Add for &Q {
    type Output = Q;
    fn add(self, rhs: &Q) -> Q {
        small_binop!(self, rhs, na, da, nb, db, {
            // i64 inputs: na*db + nb*da fits in i128 comfortably.
            reduce_i128(na * db + nb * da, da * db)
        }, {
            Q::from_big(self.to_big() + rhs.to_big())
        })
    }
}

impl Sub for &Q {
    type Output = Q;
    fn sub(self, rhs: &Q) -> Q {
        small_binop!(self, rhs, na, da, nb, db, {
            reduce_i128(na * db - nb * da, da * db)
        }, {
            Q::from_big(self.to_big() - rhs.to_big())
        })
    }
}

impl Mul for &Q {
    type Output = Q;
    fn mul(self, rhs: &Q) -> Q {
        small_binop!(self, rhs, na, da, nb, db, {
            reduce_i128(na * nb, da * db)
        }, {
            Q::from_big(self.to_big() * rhs.to_big())
        })
    }
}

impl Div for &Q {
    type Output = Q;
    fn div(self, rhs: &Q) -> Q {
        self * &rhs.recip()
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => Q(Repr::Small(-n, *d)),
            Repr::Big(b) => Q::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, rhs: &Q) -> Q {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, rhs: &Q) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

/// Shorthand for `Q::new(n, d)`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Shorthand for `Q::from_int(n)`.
pub fn qi(n: i64) -> Q {
    Q::from_int(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(0, 7), Q::zero());
        assert_eq!(q(6, 3), qi(2));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(&q(1, 2) * &q(2, 3), q(1, 3));
        assert_eq!(&q(1, 2) - &q(1, 2), Q::zero());
        assert_eq!(q(3, 4).recip(), q(4, 3));
        assert_eq!(-q(3, 4), q(-3, 4));
    }

    #[test]
    fn promotion_roundtrip() {
        let big = Q::from_int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(&sq / &big, big);
        assert!(sq.as_i64().is_none());
    }

    #[test]
    fn parse_display() {
        assert_eq!(Q::parse("-5/10").unwrap(), q(-1, 2));
        assert_eq!(Q::parse("7").unwrap(), qi(7));
        assert_eq!(format!("{}", q(-1, 6)), "-1/6");
        assert!(Q::parse("1/0").is_err());
    }

    #[test]
    fn ordering() {
        assert!(q(1, 3) < q(1, 2));
        assert!(q(-1, 2) < Q::zero());
    }
}
