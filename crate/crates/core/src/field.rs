//! Exact scalar fields.
//!
//! Everything algebraic in this crate is computed over [`Rational`], an
//! arbitrary-precision fraction kept in lowest terms. A few basis changes need
//! a single square root adjoined to ℚ; [`QuadExt`] covers those.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always normalized.
pub type Rational = num_rational::BigRational;

/// Exact field arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Embedding of ℚ.
    fn from_rational(r: Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(int(n))
    }
}

/// A field with a total order compatible with its arithmetic.
pub trait OrderedField: Field {
    fn sign(&self) -> Ordering;
}

impl Field for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl OrderedField for Rational {
    fn sign(&self) -> Ordering {
        self.cmp(&Rational::zero())
    }
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Element `a + b·√d` of the quadratic extension ℚ(√d).
///
/// `d` is fixed per computation. Values built by [`Zero::zero`], [`One::one`]
/// or [`Field::from_rational`] carry no radicand (`d = 0`) and adopt the one of
/// whatever they are combined with. Mixing two different radicands panics.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl QuadExt {
    /// `√d` itself. `d` must not be the square of a rational.
    pub fn sqrt(d: Rational) -> Result<Self> {
        if d.is_zero() || rational_sqrt(&d).is_some() {
            return Err(Error::InvalidInput(format!(
                "{d} is a rational square; ℚ(√{d}) is not a proper extension"
            )));
        }
        Ok(QuadExt { a: Rational::zero(), b: Rational::one(), d })
    }

    /// `a + b√d` for an explicit radicand.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self> {
        let root = Self::sqrt(d)?;
        Ok(QuadExt { a, b, d: root.d })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> Option<&Rational> {
        (!self.d.is_zero()).then_some(&self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_d(&self, other: &Self) -> Rational {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => other.d.clone(),
            (false, true) => self.d.clone(),
            (false, false) => {
                assert_eq!(self.d, other.d, "mixed radicands in ℚ(√d) arithmetic");
                self.d.clone()
            }
        }
    }

    fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// `a² − d·b²`, the field norm down to ℚ.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.d * &self.b * &self.b
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.d).sqrt()
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}·√{}", self.a, self.b, self.d)
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b, d }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b, d }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        let a = &self.a * &rhs.a + &d * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt { a, b, d }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_d(&rhs);
        let rhs = QuadExt { d: d.clone(), ..rhs };
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in ℚ(√d)");
        let num = QuadExt { d, ..self } * rhs.conjugate();
        QuadExt { a: num.a / &n, b: num.b / n, d: num.d }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::from_rational(Rational::one())
    }
}

impl Field for QuadExt {
    fn from_rational(r: Rational) -> Self {
        QuadExt { a: r, b: Rational::zero(), d: Rational::zero() }
    }
}

impl OrderedField for QuadExt {
    /// Sign of `a + b√d` with the positive root; requires `d > 0`.
    fn sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Ordering::Equal {
            return sa;
        }
        assert!(self.d.is_positive(), "ordering needs a real square root");
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: whichever of a², d·b² is larger wins
        match (&self.a * &self.a).cmp(&(&self.d * &self.b * &self.b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: i64) -> QuadExt {
        QuadExt::new(int(a), int(b), int(d)).unwrap()
    }

    #[test]
    fn parse_and_normalize() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -2 ").unwrap(), int(-2));
        assert_eq!(parse_rational("3/-9").unwrap(), rat(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let r = parse_rational("10/4").unwrap();
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn sqrt_detection() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert!(QuadExt::sqrt(rat(4, 9)).is_err());
        assert!(QuadExt::sqrt(int(2)).is_ok());
    }

    #[test]
    fn sqrt_squares_to_radicand() {
        let r = QuadExt::sqrt(int(2)).unwrap();
        assert_eq!(r.clone() * r, QuadExt::from_i64(2));
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = q(3, -1, 5);
        let y = q(1, 2, 5);
        assert_eq!((x.clone() * y.clone()) / y, x);
        let one = QuadExt::one();
        let inv = one / q(1, 1, 2);
        // 1/(1+√2) = √2 − 1
        assert_eq!(inv, q(-1, 1, 2));
    }

    #[test]
    fn ordering_of_mixed_signs() {
        assert_eq!(q(1, -1, 2).sign(), Ordering::Less); // 1 − √2
        assert_eq!(q(2, -1, 2).sign(), Ordering::Greater); // 2 − √2
        assert_eq!(q(-3, 2, 2).sign(), Ordering::Less); // −3 + 2√2
        assert_eq!(q(0, 0, 2).sign(), Ordering::Equal);
        assert!((q(2, -1, 2).to_f64() - (2.0 - 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    #[should_panic(expected = "mixed radicands")]
    fn mixed_radicands_panic() {
        let _ = q(0, 1, 2) + q(0, 1, 3);
    }
}
