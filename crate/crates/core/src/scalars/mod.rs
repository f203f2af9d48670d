//! Exact coefficient domains.
//!
//! Three carriers implement [`Coeff`]: [`Rational`] (the field ℚ), [`QuadExt`]
//! (ℚ(√d) with its conjugation) and [`SymCoeff`] (commutative polynomials in
//! named unknowns, used by the elimination solver). [`Integer`] is available
//! for group algebras over ℤ.
//!
//! Values that carry a context (the `d` of a quadratic field, the unknown list
//! of a symbolic ring) store it only when they actually depend on it, so that
//! `zero()` and `one()` need no context. Combining two values whose contexts
//! disagree is a [`Error::DomainMismatch`]; the `field_*` and `try_*` entry
//! points report it, the operator impls panic on it.

mod quad;
mod sym;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use quad::{is_square_free, QuadExt};
pub use sym::{SymCoeff, SymMonomial, SymRing};

pub type Rational = BigRational;
pub type Integer = BigInt;

/// The runtime field scalar: ℚ embeds as `b = 0`.
pub type Scalar = QuadExt;

/// Context a coefficient depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Any,
    Quad(i64),
    Unknowns(Arc<[String]>),
}

impl Domain {
    pub fn join(&self, other: &Domain) -> Result<Domain> {
        match (self, other) {
            (Domain::Any, d) | (d, Domain::Any) => Ok(d.clone()),
            (a, b) if a == b => Ok(a.clone()),
            (a, b) => Err(Error::DomainMismatch(format!("{a:?} vs {b:?}"))),
        }
    }
}

/// A commutative unital coefficient ring.
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self;

    /// Embeds a rational, `None` when the ring has no such element.
    fn from_rational(r: &Rational) -> Option<Self>;

    /// Multiplicative inverse, `None` for zero and non-units.
    fn inv(&self) -> Option<Self>;

    /// The nontrivial field automorphism where one exists, identity otherwise.
    fn conjugate(&self) -> Self {
        self.clone()
    }

    fn domain(&self) -> Domain {
        Domain::Any
    }

    /// Whether the printed form can be used as a factor without parentheses.
    fn is_atomic(&self) -> bool {
        true
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Coeff for Integer {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        r.is_integer().then(|| r.to_integer())
    }
    fn inv(&self) -> Option<Self> {
        (self.abs() == <BigInt as One>::one()).then(|| self.clone())
    }
}

/// Field automorphisms of the supported coefficient fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldAuto {
    #[serde(rename = "id")]
    Identity,
    #[serde(rename = "conj")]
    Conjugation,
}

impl FieldAuto {
    /// φ(u). Conjugation acts as the identity on rational values.
    pub fn apply<C: Coeff>(self, u: &C) -> C {
        match self {
            FieldAuto::Identity => u.clone(),
            FieldAuto::Conjugation => u.conjugate(),
        }
    }

    pub fn compose(self, other: FieldAuto) -> FieldAuto {
        if self == other {
            FieldAuto::Identity
        } else {
            FieldAuto::Conjugation
        }
    }

    /// Both automorphisms are involutions.
    pub fn inverse(self) -> FieldAuto {
        self
    }

    pub fn is_identity(self) -> bool {
        self == FieldAuto::Identity
    }
}

impl fmt::Display for FieldAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldAuto::Identity => f.write_str("id"),
            FieldAuto::Conjugation => f.write_str("conj"),
        }
    }
}

pub fn apply_auto<C: Coeff>(phi: FieldAuto, u: &C) -> C {
    phi.apply(u)
}

pub fn field_add<C: Coeff>(u: &C, v: &C) -> Result<C> {
    u.domain().join(&v.domain())?;
    Ok(u.clone() + v.clone())
}

pub fn field_sub<C: Coeff>(u: &C, v: &C) -> Result<C> {
    u.domain().join(&v.domain())?;
    Ok(u.clone() - v.clone())
}

pub fn field_mul<C: Coeff>(u: &C, v: &C) -> Result<C> {
    u.domain().join(&v.domain())?;
    Ok(u.clone() * v.clone())
}

pub fn field_neg<C: Coeff>(u: &C) -> C {
    -u.clone()
}

pub fn field_inv<C: Coeff>(u: &C) -> Result<C> {
    if u.is_zero() {
        return Err(Error::DivisionByZero);
    }
    u.inv()
        .ok_or_else(|| Error::NotInvertible(format!("{u} is not a unit")))
}

/// Gauss-Jordan inverse of a square matrix, `None` when it is singular.
pub fn matrix_inverse<C: Coeff>(m: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = m.len();
    let mut a: Vec<Vec<C>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { C::one() } else { C::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col].inv().is_some())?;
        a.swap(col, piv);
        let s = a[col][col].inv()?;
        for v in a[col].iter_mut() {
            *v = s.clone() * v.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = a[col][c].clone();
                    a[r][c] = a[r][c].clone() - f.clone() * t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank over the field of fractions, by elimination with invertible pivots.
pub fn matrix_rank<C: Coeff>(m: &[Vec<C>]) -> usize {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col].inv().is_some()) else {
            continue;
        };
        a.swap(rank, piv);
        let s = a[rank][col].inv().expect("pivot is a unit");
        for r in rank + 1..a.len() {
            let f = a[r][col].clone() * s.clone();
            for c in col..cols {
                let t = a[rank][c].clone();
                a[r][c] = a[r][c].clone() - f.clone() * t;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        assert_eq!(field_add(&rat(1, 2), &rat(1, 3)).unwrap(), rat(5, 6));
        let third = field_inv(&int(3)).unwrap();
        assert_eq!(third, rat(1, 3));
        assert_eq!(field_mul(&int(3), &third).unwrap(), int(1));
        assert_eq!(field_inv(&int(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_canonical_form() {
        let r = rat(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(rat(0, 5), int(0));
    }

    #[test]
    fn integer_units() {
        assert_eq!(Coeff::inv(&BigInt::from(-1)), Some(BigInt::from(-1)));
        assert_eq!(Coeff::inv(&BigInt::from(2)), None);
        assert_eq!(<Integer as Coeff>::from_rational(&rat(1, 2)), None);
    }

    #[test]
    fn identity_auto_on_rationals() {
        assert_eq!(apply_auto(FieldAuto::Identity, &rat(5, 7)), rat(5, 7));
        assert_eq!(apply_auto(FieldAuto::Conjugation, &rat(5, 7)), rat(5, 7));
        assert_eq!(
            FieldAuto::Conjugation.compose(FieldAuto::Conjugation),
            FieldAuto::Identity
        );
    }

    #[test]
    fn matrix_inverse_and_rank() {
        let m = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        let inv = matrix_inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![int(-2), int(1)], vec![rat(3, 2), rat(-1, 2)]]);
        assert_eq!(matrix_rank(&m), 2);
        let sing = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(matrix_inverse(&sing), None);
        assert_eq!(matrix_rank(&sing), 1);
        assert_eq!(matrix_rank(&[vec![int(0), int(1)], vec![int(0), int(0)]]), 1);
    }
}
