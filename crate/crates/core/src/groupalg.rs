//! Group algebras RF of free groups and free RF-modules.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ncpoly::fmt_summand;
use crate::scalars::{Coeff, Domain, FieldAuto};
use crate::words::{GroupWord, Word};

/// A finite formal sum of reduced group words with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgElem<C: Coeff> {
    terms: BTreeMap<GroupWord, C>,
}

fn add_into<C: Coeff>(terms: &mut BTreeMap<GroupWord, C>, w: GroupWord, c: C) {
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

impl<C: Coeff> GroupAlgElem<C> {
    pub fn zero() -> Self {
        GroupAlgElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::word(GroupWord::identity())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, GroupWord::identity())
    }

    pub fn word(w: GroupWord) -> Self {
        Self::term(C::one(), w)
    }

    pub fn term(c: C, w: GroupWord) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, w, c);
        GroupAlgElem { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (GroupWord, C)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in it {
            add_into(&mut terms, w, c);
        }
        GroupAlgElem { terms }
    }

    /// `Σ r_i x^i` over the generator `x_1`, from `(i, r_i)` pairs.
    pub fn laurent<I: IntoIterator<Item = (i64, C)>>(it: I) -> Self {
        Self::from_terms(it.into_iter().map(|(i, c)| (GroupWord::gen_pow(1, i), c)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &GroupWord) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn max_generator(&self) -> u32 {
        self.terms.keys().map(Word::max_generator).max().unwrap_or(0)
    }

    pub fn domain(&self) -> Result<Domain> {
        self.terms
            .values()
            .try_fold(Domain::Any, |d, c| d.join(&c.domain()))
    }

    /// The sum of all coefficients.
    pub fn augmentation(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.domain()?.join(&other.domain()?)?;
        Ok(self.clone() + other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.domain()?.join(&other.domain()?)?;
        Ok(self.mul_ref(other))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                add_into(&mut terms, u.concat(v), c.clone() * d.clone());
            }
        }
        GroupAlgElem { terms }
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(w, d)| (w.clone(), c.clone() * d.clone())),
        )
    }

    /// Right multiplication by a group element.
    pub fn mul_word(&self, g: &GroupWord) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.concat(g), c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Replaces every word by its image under `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &BTreeMap<u32, GroupWord>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            add_into(&mut terms, w.substitute(images)?, c.clone());
        }
        Ok(GroupAlgElem { terms })
    }

    /// Each word written in reverse order.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.reverse(), c.clone())))
    }

    /// Each word replaced by its inverse.
    pub fn inv_words(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.invert(), c.clone())))
    }

    pub fn twisted(&self, phi: FieldAuto) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), phi.apply(c))))
    }

    /// For a single term `r·g` with `r` invertible, its inverse `r⁻¹·g⁻¹`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, c) = self.terms.iter().next()?;
        Some(Self::term(c.inv()?, w.invert()))
    }

    /// `Some(n)` when the element is the single word `x_1^n`.
    pub fn as_power_of_x(&self) -> Option<i64> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, c) = self.terms.iter().next()?;
        if c.is_one() {
            w.as_power_of(1)
        } else {
            None
        }
    }
}

impl<C: Coeff> Default for GroupAlgElem<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Add for GroupAlgElem<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            add_into(&mut self.terms, w, c);
        }
        self
    }
}

impl<C: Coeff> Sub for GroupAlgElem<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for GroupAlgElem<C> {
    type Output = Self;
    fn neg(self) -> Self {
        GroupAlgElem {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<C: Coeff> Mul for GroupAlgElem<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, C: Coeff> Mul<&'a GroupAlgElem<C>> for &'a GroupAlgElem<C> {
    type Output = GroupAlgElem<C>;
    fn mul(self, rhs: &GroupAlgElem<C>) -> GroupAlgElem<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Coeff> fmt::Display for GroupAlgElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            fmt_summand(f, k == 0, c, &format!("[{w}]"))?;
        }
        Ok(())
    }
}

/// An element `Σ y_j P_j` of the free module with basis `y1, y2, …`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepVector<C: Coeff> {
    comps: BTreeMap<u32, GroupAlgElem<C>>,
}

impl<C: Coeff> RepVector<C> {
    pub fn zero() -> Self {
        RepVector {
            comps: BTreeMap::new(),
        }
    }

    /// The basis vector `y_j`.
    pub fn basis(j: u32) -> Self {
        Self::component(j, GroupAlgElem::one())
    }

    /// `y_j · p`.
    pub fn component(j: u32, p: GroupAlgElem<C>) -> Self {
        assert!(j >= 1, "basis indices start at 1");
        let mut comps = BTreeMap::new();
        if !p.is_zero() {
            comps.insert(j, p);
        }
        RepVector { comps }
    }

    pub fn from_components<I: IntoIterator<Item = (u32, GroupAlgElem<C>)>>(it: I) -> Self {
        let mut v = Self::zero();
        for (j, p) in it {
            v = v + Self::component(j, p);
        }
        v
    }

    pub fn components(&self) -> impl Iterator<Item = (&u32, &GroupAlgElem<C>)> {
        self.comps.iter()
    }

    pub fn get(&self, j: u32) -> GroupAlgElem<C> {
        self.comps.get(&j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn max_basis(&self) -> u32 {
        self.comps.keys().copied().max().unwrap_or(0)
    }

    pub fn max_generator(&self) -> u32 {
        self.comps
            .values()
            .map(GroupAlgElem::max_generator)
            .max()
            .unwrap_or(0)
    }

    pub fn domain(&self) -> Result<Domain> {
        self.comps
            .values()
            .try_fold(Domain::Any, |d, p| d.join(&p.domain()?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.domain()?.join(&other.domain()?)?;
        Ok(self.clone() + other.clone())
    }

    fn map(&self, f: impl Fn(&GroupAlgElem<C>) -> GroupAlgElem<C>) -> Self {
        Self::from_components(self.comps.iter().map(|(&j, p)| (j, f(p))))
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        self.map(|p| p.scalar_mul(c))
    }

    /// Right multiplication by a group-algebra element.
    pub fn mul_right(&self, q: &GroupAlgElem<C>) -> Self {
        self.map(|p| p * q)
    }

    /// The module action `v · g`.
    pub fn act(&self, g: &GroupWord) -> Self {
        self.map(|p| p.mul_word(g))
    }

    pub fn try_act(&self, g: &GroupWord, rank: u32) -> Result<Self> {
        if g.max_generator() > rank || self.max_generator() > rank {
            return Err(Error::DomainMismatch(format!(
                "{g} or {self} outside the group of rank {rank}"
            )));
        }
        Ok(self.act(g))
    }

    pub fn bar(&self) -> Self {
        self.map(GroupAlgElem::bar)
    }

    pub fn inv_words(&self) -> Self {
        self.map(GroupAlgElem::inv_words)
    }

    pub fn twisted(&self, phi: FieldAuto) -> Self {
        self.map(|p| p.twisted(phi))
    }

    pub fn substitute_words(&self, images: &BTreeMap<u32, GroupWord>) -> Result<Self> {
        let mut out = Self::zero();
        for (&j, p) in &self.comps {
            out = out + Self::component(j, p.substitute(images)?);
        }
        Ok(out)
    }
}

impl<C: Coeff> Default for RepVector<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Add for RepVector<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (j, p) in rhs.comps {
            let sum = self.comps.remove(&j).unwrap_or_default() + p;
            if !sum.is_zero() {
                self.comps.insert(j, sum);
            }
        }
        self
    }
}

impl<C: Coeff> Sub for RepVector<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for RepVector<C> {
    type Output = Self;
    fn neg(self) -> Self {
        RepVector {
            comps: self.comps.into_iter().map(|(j, p)| (j, -p)).collect(),
        }
    }
}

impl<C: Coeff> fmt::Display for RepVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        for (k, (j, p)) in self.comps.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if *p == GroupAlgElem::one() {
                write!(f, "y{j}")?;
            } else {
                write!(f, "y{j}*({p})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalars::{int, rat, Rational};
    use crate::words::Letter;
    use proptest::prelude::*;

    pub(crate) type G = GroupAlgElem<Rational>;

    pub(crate) fn xw(i: u32, n: i64) -> GroupWord {
        GroupWord::gen_pow(i, n)
    }

    pub(crate) fn ga(terms: &[(i64, &[(u32, i64)])]) -> G {
        G::from_terms(terms.iter().map(|&(c, w)| {
            let word = w
                .iter()
                .fold(GroupWord::identity(), |acc, &(g, n)| acc.concat(&xw(g, n)));
            (word, int(c))
        }))
    }

    pub(crate) fn word_strategy(gens: u32, len: usize) -> impl Strategy<Value = GroupWord> {
        prop::collection::vec((1..=gens, any::<bool>()), 0..=len).prop_map(|ls| {
            GroupWord::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i))).unwrap()
        })
    }

    pub(crate) fn elem_strategy(gens: u32) -> impl Strategy<Value = G> {
        let coeffs = prop::sample::select(vec![int(-2), int(-1), rat(1, 2), int(1), int(2)]);
        prop::collection::vec((coeffs, word_strategy(gens, 3)), 0..=3)
            .prop_map(|ts| G::from_terms(ts.into_iter().map(|(c, w)| (w, c))))
    }

    #[test]
    fn laurent_examples() {
        let a = ga(&[(1, &[]), (1, &[(1, 1)])]);
        let b = ga(&[(1, &[]), (-1, &[(1, 1)])]);
        assert_eq!(a * b, ga(&[(1, &[]), (-1, &[(1, 2)])]));
        assert_eq!(ga(&[(1, &[(1, 1)])]) * ga(&[(1, &[(1, -1)])]), G::one());
        let c = ga(&[(1, &[(1, 1)]), (1, &[(2, 1)])]) * ga(&[(1, &[(1, 1)])]);
        assert_eq!(c, ga(&[(1, &[(1, 2)]), (1, &[(2, 1), (1, 1)])]));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(ga(&[(2, &[]), (-1, &[(1, 1)])]).augmentation(), int(1));
        assert_eq!(G::zero().augmentation(), int(0));
    }

    #[test]
    fn substitute_examples() {
        let u = ga(&[(1, &[]), (1, &[(1, 1)])]);
        let sq: BTreeMap<u32, GroupWord> = [(1, xw(1, 2))].into_iter().collect();
        assert_eq!(u.substitute(&sq).unwrap(), ga(&[(1, &[]), (1, &[(1, 2)])]));
        let v = ga(&[(1, &[(1, 1)]), (1, &[(1, -1)])]);
        let e: BTreeMap<u32, GroupWord> = [(1, GroupWord::identity())].into_iter().collect();
        assert_eq!(v.substitute(&e).unwrap(), G::constant(int(2)));
    }

    #[test]
    fn bar_and_inverse_examples() {
        let u = ga(&[(2, &[(1, 1), (2, 1)]), (1, &[(3, 1)])]);
        assert_eq!(u.bar(), ga(&[(2, &[(2, 1), (1, 1)]), (1, &[(3, 1)])]));
        let v = ga(&[(1, &[(1, 1)]), (3, &[(1, 2)])]);
        assert_eq!(v.inv_words(), ga(&[(1, &[(1, -1)]), (3, &[(1, -2)])]));
        assert_eq!(u.bar().bar(), u);
        assert_eq!(v.inv_words().inv_words(), v);
    }

    #[test]
    fn display_forms() {
        let u = ga(&[(2, &[(1, 1), (2, -1)]), (1, &[])]);
        assert_eq!(u.to_string(), "2*[x1*x2^-1] + [e]");
        let v = RepVector::component(1, ga(&[(1, &[]), (1, &[(1, 1)])]));
        assert_eq!(v.to_string(), "y1*([x1] + [e])");
        assert_eq!(RepVector::<Rational>::basis(2).to_string(), "y2");
    }

    #[test]
    fn module_action_examples() {
        let v = RepVector::component(1, ga(&[(1, &[]), (1, &[(1, 1)])]));
        let w = v.act(&xw(1, 1));
        assert_eq!(w, RepVector::component(1, ga(&[(1, &[(1, 1)]), (1, &[(1, 2)])])));
        assert_eq!(v.act(&GroupWord::identity()), v);
        assert!(v.try_act(&xw(3, 1), 2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(u in elem_strategy(2), v in elem_strategy(2), w in elem_strategy(2)) {
            prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
            prop_assert_eq!(&u * &(v.clone() + w.clone()), &u * &v + &u * &w);
            prop_assert_eq!(&u * &G::one(), u.clone());
        }

        #[test]
        fn laurent_commutative(u in elem_strategy(1), v in elem_strategy(1)) {
            prop_assert_eq!(&u * &v, &v * &u);
        }

        #[test]
        fn augmentation_is_hom(u in elem_strategy(3), v in elem_strategy(3)) {
            prop_assert_eq!((&u * &v).augmentation(), u.augmentation() * v.augmentation());
            prop_assert_eq!((u.clone() + v.clone()).augmentation(), u.augmentation() + v.augmentation());
        }

        #[test]
        fn substitution_is_hom(u in elem_strategy(2), v in elem_strategy(2),
                               a in word_strategy(2, 3), b in word_strategy(2, 3)) {
            let img: BTreeMap<u32, GroupWord> = [(1, a), (2, b)].into_iter().collect();
            prop_assert_eq!((&u * &v).substitute(&img).unwrap(),
                            &u.substitute(&img).unwrap() * &v.substitute(&img).unwrap());
        }

        #[test]
        fn bar_and_inv_are_anti(u in elem_strategy(3), v in elem_strategy(3)) {
            prop_assert_eq!((&u * &v).bar(), &v.bar() * &u.bar());
            prop_assert_eq!((&u * &v).inv_words(), &v.inv_words() * &u.inv_words());
            prop_assert_eq!(u.bar().inv_words(), u.inv_words().bar());
        }

        #[test]
        fn action_laws(p in elem_strategy(2), q in elem_strategy(2), g in word_strategy(2, 4), h in word_strategy(2, 4)) {
            let v = RepVector::from_components([(1, p), (2, q)]);
            prop_assert_eq!(v.act(&g).act(&h), v.act(&g.concat(&h)));
            prop_assert_eq!(v.act(&g).act(&g.invert()), v);
        }
    }
}
