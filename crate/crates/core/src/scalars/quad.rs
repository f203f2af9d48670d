use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::{int, Coeff, Domain, Rational};
use crate::error::{Error, Result};

/// An element `a + b√d` of ℚ(√d).
///
/// `d` is recorded only while `b ≠ 0`; rational values belong to every
/// quadratic field and compare equal across sessions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Option<i64>,
}

pub fn is_square_free(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::InvalidField(format!(
                "d = {d} must be square-free and different from 0 and 1"
            )));
        }
        Ok(Self::from_parts(a, b, Some(d)))
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: None,
        }
    }

    /// √d itself.
    pub fn sqrt(d: i64) -> Result<Self> {
        Self::new(Rational::zero(), int(1), d)
    }

    fn from_parts(a: Rational, b: Rational, d: Option<i64>) -> Self {
        if b.is_zero() {
            QuadExt { a, b, d: None }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> Option<i64> {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn shared_d(&self, other: &Self) -> Result<Option<i64>> {
        match (self.d, other.d) {
            (Some(x), Some(y)) if x != y => Err(Error::DomainMismatch(format!(
                "quadratic fields with d = {x} and d = {y}"
            ))),
            (x, y) => Ok(x.or(y)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.shared_d(other)?;
        Ok(Self::from_parts(
            &self.a + &other.a,
            &self.b + &other.b,
            d,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.shared_d(other)?;
        let dd = int(d.unwrap_or(0));
        Ok(Self::from_parts(
            &self.a * &other.a + &self.b * &other.b * dd,
            &self.a * &other.b + &self.b * &other.a,
            d,
        ))
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        let dd = int(self.d.unwrap_or(0));
        &self.a * &self.a - &self.b * &self.b * dd
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.a.clone(), -self.b.clone(), self.d)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::rational(int(n))
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        self.try_add(&rhs).expect("quadratic field mismatch")
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self.try_add(&-rhs).expect("quadratic field mismatch")
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        self.try_mul(&rhs).expect("quadratic field mismatch")
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Coeff for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn one() -> Self {
        QuadExt::rational(int(1))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        QuadExt::from(n)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(QuadExt::rational(r.clone()))
    }
    fn inv(&self) -> Option<Self> {
        // nonzero norm for every nonzero element since √d is irrational
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self::from_parts(
            &self.a / &n,
            -(&self.b / &n),
            self.d,
        ))
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn domain(&self) -> Domain {
        match self.d {
            Some(d) => Domain::Quad(d),
            None => Domain::Any,
        }
    }
    fn is_atomic(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }
}

fn fmt_sqrt_multiple(b: &Rational, f: &mut fmt::Formatter<'_>, leading: bool) -> fmt::Result {
    let mag = b.abs();
    let sign = if b.is_negative() {
        "-"
    } else if leading {
        ""
    } else {
        "+"
    };
    if mag == int(1) {
        write!(f, "{sign}s")
    } else {
        write!(f, "{sign}{mag}*s")
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            fmt_sqrt_multiple(&self.b, f, true)
        } else {
            write!(f, "{}", self.a)?;
            fmt_sqrt_multiple(&self.b, f, false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{field_add, field_inv, rat, FieldAuto};

    fn q(a: i64, b: i64) -> QuadExt {
        QuadExt::new(int(a), int(b), 2).unwrap()
    }

    #[test]
    fn norm_identity() {
        assert_eq!(q(1, 1) * q(1, -1), QuadExt::from(-1));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(FieldAuto::Conjugation.apply(&q(1, 1)), q(1, -1));
        let u = q(3, -2);
        assert_eq!(
            FieldAuto::Conjugation.apply(&FieldAuto::Conjugation.apply(&u)),
            u
        );
    }

    #[test]
    fn inverse_round_trip() {
        let u = q(3, -2);
        let v = field_inv(&u).unwrap();
        assert_eq!(u * v, QuadExt::one());
        let w = QuadExt::new(rat(1, 2), rat(-3, 5), -1).unwrap();
        assert_eq!(w.clone() * w.inv().unwrap(), QuadExt::one());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = q(0, 1);
        let b = QuadExt::sqrt(3).unwrap();
        assert!(matches!(field_add(&a, &b), Err(Error::DomainMismatch(_))));
        // rationals combine with any field
        assert!(field_add(&a, &QuadExt::from(4)).is_ok());
    }

    #[test]
    fn invalid_d() {
        assert!(QuadExt::sqrt(4).is_err());
        assert!(QuadExt::sqrt(1).is_err());
        assert!(QuadExt::sqrt(0).is_err());
        assert!(QuadExt::sqrt(-1).is_ok());
        assert!(QuadExt::sqrt(12).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(1, 1).to_string(), "1+s");
        assert_eq!(q(3, -2).to_string(), "3-2*s");
        assert_eq!(q(0, -1).to_string(), "-s");
        assert_eq!(QuadExt::new(rat(1, 2), rat(1, 3), 2).unwrap().to_string(), "1/2+1/3*s");
        assert_eq!(QuadExt::from(-7).to_string(), "-7");
    }

    #[test]
    fn cancellation_drops_field() {
        let s = q(0, 1);
        assert_eq!((s.clone() - s).d(), None);
    }
}
