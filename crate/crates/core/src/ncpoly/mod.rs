//! The free associative algebra K⟨x1, x2, …⟩ with unit.

mod derived;
mod invert;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Coeff, Domain, FieldAuto};
use crate::words::{MonoidWord, Word};

pub use derived::DerivedSig;
pub use invert::{compose_images, image_map, invert_endomorphism, is_identity_images, linear_part};

/// Whether a map preserves or reverses the order of products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "identity", alias = "straight")]
    Straight,
    #[serde(rename = "mirror", alias = "dual")]
    Dual,
}

impl Orientation {
    pub fn compose(self, other: Orientation) -> Orientation {
        if self == other {
            Orientation::Straight
        } else {
            Orientation::Dual
        }
    }

    pub fn is_dual(self) -> bool {
        self == Orientation::Dual
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Straight => f.write_str("straight"),
            Orientation::Dual => f.write_str("dual"),
        }
    }
}

/// A non-commutative polynomial: a finite map from monoid words to nonzero
/// coefficients. The empty word carries the constant term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly<C: Coeff> {
    terms: BTreeMap<MonoidWord, C>,
}

fn add_into<C: Coeff>(terms: &mut BTreeMap<MonoidWord, C>, w: MonoidWord, c: C) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl<C: Coeff> NcPoly<C> {
    pub fn zero() -> Self {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, MonoidWord::identity())
    }

    pub fn generator(i: u32) -> Self {
        Self::term(C::one(), MonoidWord::generator(i))
    }

    pub fn term(c: C, w: MonoidWord) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, w, c);
        NcPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (MonoidWord, C)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in it {
            add_into(&mut terms, w, c);
        }
        NcPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoidWord, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &MonoidWord) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&MonoidWord::identity())
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&MonoidWord::identity()).cloned(),
            _ => None,
        }
    }

    /// Degree of the longest monomial; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_generator(&self) -> u32 {
        self.terms.keys().map(Word::max_generator).max().unwrap_or(0)
    }

    pub fn domain(&self) -> Result<Domain> {
        self.terms
            .values()
            .try_fold(Domain::Any, |d, c| d.join(&c.domain()))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.domain()?.join(&other.domain()?).map(|_| ())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.clone() + other.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.clone() - other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_ref(other))
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, d)| (w.clone(), c.clone() * d.clone())))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                add_into(&mut terms, u.concat(v), c.clone() * d.clone());
            }
        }
        NcPoly { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// The commutator `pq − qp`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul_ref(other) - other.mul_ref(self)
    }

    /// Applies `c ↦ f(c)` to every coefficient.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NcPoly<D> {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// The (twisted, possibly anti-) homomorphism extending `x_i ↦ images[i]`:
    /// each monomial `c·x_{i1}⋯x_{ik}` goes to `φ(c)·img(i1)⋯img(ik)`, with the
    /// product order reversed when `orientation` is dual.
    pub fn apply_map(
        &self,
        images: &BTreeMap<u32, NcPoly<C>>,
        phi: FieldAuto,
        orientation: Orientation,
    ) -> Result<Self> {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut prod = NcPoly::constant(phi.apply(c));
            let letters: Vec<u32> = match orientation {
                Orientation::Straight => w.letters().to_vec(),
                Orientation::Dual => w.letters().iter().rev().copied().collect(),
            };
            for i in letters {
                let img = images
                    .get(&i)
                    .ok_or_else(|| Error::UnboundGenerator(format!("x{i}")))?;
                prod = prod.try_mul(img)?;
            }
            out = out.try_add(&prod)?;
        }
        Ok(out)
    }

    /// Plain substitution `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &BTreeMap<u32, NcPoly<C>>) -> Result<Self> {
        self.apply_map(images, FieldAuto::Identity, Orientation::Straight)
    }

    /// η: reverses every monomial.
    pub fn reversed(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.reverse(), c.clone())))
    }

    /// φ applied to the coefficients only.
    pub fn twisted(&self, phi: FieldAuto) -> Self {
        self.map_coeffs(|c| phi.apply(c))
    }
}

impl<C: Coeff> Default for NcPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Add for NcPoly<C> {
    type Output = NcPoly<C>;
    fn add(mut self, rhs: NcPoly<C>) -> NcPoly<C> {
        for (w, c) in rhs.terms {
            add_into(&mut self.terms, w, c);
        }
        self
    }
}

impl<C: Coeff> Sub for NcPoly<C> {
    type Output = NcPoly<C>;
    fn sub(self, rhs: NcPoly<C>) -> NcPoly<C> {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for NcPoly<C> {
    type Output = NcPoly<C>;
    fn neg(self) -> NcPoly<C> {
        NcPoly {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<C: Coeff> Mul for NcPoly<C> {
    type Output = NcPoly<C>;
    fn mul(self, rhs: NcPoly<C>) -> NcPoly<C> {
        self.mul_ref(&rhs)
    }
}

impl<'a, C: Coeff> Mul<&'a NcPoly<C>> for &'a NcPoly<C> {
    type Output = NcPoly<C>;
    fn mul(self, rhs: &NcPoly<C>) -> NcPoly<C> {
        self.mul_ref(rhs)
    }
}

/// Writes `coefficient * body` as a signed summand; `body` empty means a
/// constant. Shared by the polynomial and group-algebra printers.
pub(crate) fn fmt_summand<C: Coeff>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &C,
    body: &str,
) -> fmt::Result {
    let text = c.to_string();
    let (neg, mag) = match text.strip_prefix('-') {
        Some(rest) if c.is_atomic() => (true, rest.to_string()),
        _ => (false, text),
    };
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else if neg {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    let mag = if c.is_atomic() { mag } else { format!("({mag})") };
    if body.is_empty() {
        f.write_str(&mag)
    } else if mag == "1" {
        f.write_str(body)
    } else {
        write!(f, "{mag}*{body}")
    }
}

impl<C: Coeff> fmt::Display for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let body = if w.is_identity() {
                String::new()
            } else {
                w.to_string()
            };
            fmt_summand(f, k == 0, c, &body)?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalars::{int, rat, QuadExt, Rational};
    use proptest::prelude::*;

    pub(crate) type P = NcPoly<Rational>;

    pub(crate) fn x(i: u32) -> P {
        P::generator(i)
    }

    pub(crate) fn k(n: i64) -> P {
        P::constant(int(n))
    }

    pub(crate) fn poly_strategy(gens: u32) -> impl Strategy<Value = P> {
        let coeffs = prop::sample::select(vec![
            int(-2),
            int(-1),
            rat(-1, 2),
            rat(1, 2),
            int(1),
            int(2),
        ]);
        let word = prop::collection::vec(1..=gens, 0..=3);
        prop::collection::vec((coeffs, word), 0..=4).prop_map(|ts| {
            P::from_terms(
                ts.into_iter()
                    .map(|(c, w)| (MonoidWord::new(w).unwrap(), c)),
            )
        })
    }

    #[test]
    fn noncommutative_expansion() {
        let p = (x(1) + x(2)) * (x(1) - x(2));
        assert_eq!(p.to_string(), "x1^2 - x1*x2 + x2*x1 - x2^2");
    }

    #[test]
    fn unit_zero_laws() {
        let p = x(1) * x(2) + k(3);
        assert_eq!(p.clone() * P::one(), p);
        assert_eq!(p.clone() + P::zero(), p);
        assert_eq!((x(1) * x(2)) * x(3), x(1) * (x(2) * x(3)));
    }

    #[test]
    fn display_forms() {
        let p = P::constant(rat(3, 2)) * x(1) * x(2) - x(1) + k(1);
        assert_eq!(p.to_string(), "3/2*x1*x2 - x1 + 1");
        assert_eq!((-x(1)).to_string(), "-x1");
        assert_eq!(P::zero().to_string(), "0");
        let s = QuadExt::new(int(1), int(1), 2).unwrap();
        let q = NcPoly::<QuadExt>::constant(s) * NcPoly::generator(1);
        assert_eq!(q.to_string(), "(1+s)*x1");
        let t = NcPoly::<QuadExt>::constant(-QuadExt::sqrt(2).unwrap()) * NcPoly::generator(1);
        assert_eq!(t.to_string(), "-s*x1");
    }

    #[test]
    fn mirror_example() {
        let p = k(2) * x(1) * x(2) + x(2);
        let id: BTreeMap<u32, P> = (1..=2).map(|i| (i, x(i))).collect();
        let q = p.apply_map(&id, FieldAuto::Identity, Orientation::Dual).unwrap();
        assert_eq!(q, k(2) * x(2) * x(1) + x(2));
    }

    #[test]
    fn twisted_example() {
        type Q = NcPoly<QuadExt>;
        let a = QuadExt::new(int(1), int(1), 2).unwrap();
        let b = QuadExt::new(int(1), int(-1), 2).unwrap();
        let id: BTreeMap<u32, Q> = [(1, Q::generator(1))].into_iter().collect();
        let p = Q::constant(a) * Q::generator(1);
        let q = p.apply_map(&id, FieldAuto::Conjugation, Orientation::Straight).unwrap();
        assert_eq!(q, Q::constant(b) * Q::generator(1));
    }

    #[test]
    fn unbound_image() {
        let id: BTreeMap<u32, P> = [(1, x(1))].into_iter().collect();
        assert!(matches!(x(2).substitute(&id), Err(Error::UnboundGenerator(_))));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(x(1).bracket(&x(2)), x(1) * x(2) - x(2) * x(1));
        let p = x(1) * x(2) + k(1);
        assert!(p.bracket(&p).is_zero());
        let jac = x(1).bracket(&x(2)).bracket(&x(3))
            + x(2).bracket(&x(3)).bracket(&x(1))
            + x(3).bracket(&x(1)).bracket(&x(2));
        assert!(jac.is_zero());
    }

    #[test]
    fn mixed_fields_rejected() {
        type Q = NcPoly<QuadExt>;
        let a = Q::constant(QuadExt::sqrt(2).unwrap());
        let b = Q::constant(QuadExt::sqrt(3).unwrap());
        assert!(matches!(a.try_add(&b), Err(Error::DomainMismatch(_))));
    }

    fn images() -> impl Strategy<Value = BTreeMap<u32, P>> {
        (poly_strategy(2), poly_strategy(2)).prop_map(|(a, b)| [(1, a), (2, b)].into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dual_map_is_anti(p in poly_strategy(2), q in poly_strategy(2), img in images()) {
            let f = |r: &P| r.apply_map(&img, FieldAuto::Identity, Orientation::Dual).unwrap();
            prop_assert_eq!(f(&(p.clone() * q.clone())), f(&q) * f(&p));
        }

        #[test]
        fn straight_map_is_hom(p in poly_strategy(2), q in poly_strategy(2), img in images()) {
            let f = |r: &P| r.substitute(&img).unwrap();
            prop_assert_eq!(f(&(p.clone() * q.clone())), f(&p) * f(&q));
            prop_assert_eq!(f(&(p.clone() + q.clone())), f(&p) + f(&q));
        }

        #[test]
        fn eta_laws(p in poly_strategy(3), q in poly_strategy(3)) {
            prop_assert_eq!((p.clone() * q.clone()).reversed(), q.reversed() * p.reversed());
            prop_assert_eq!((p.clone() + q.clone()).reversed(), p.reversed() + q.reversed());
            prop_assert_eq!(p.reversed().reversed(), p);
        }

        #[test]
        fn ring_laws(p in poly_strategy(2), q in poly_strategy(2), r in poly_strategy(2)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(q.clone() + r.clone()), &p * &q + &p * &r);
            prop_assert_eq!(p.clone() - p.clone(), P::zero());
        }
    }
}
