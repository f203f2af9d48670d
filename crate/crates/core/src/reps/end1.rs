use std::collections::BTreeMap;
use std::fmt;

use super::{RepMorphism, RepObject};
use crate::error::{Error, Result};
use crate::groupalg::{GroupAlgElem, RepVector};
use crate::scalars::Coeff;
use crate::words::GroupWord;

/// An endomorphism ν_(w, xⁿ) of the monogenic free representation: `y1 ↦ y1·w`, `x ↦ xⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct End1Elem<C: Coeff> {
    pub w: GroupAlgElem<C>,
    pub n: i64,
}

/// Membership in the distinguished subsets of End₁.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct End1Class {
    pub in_te: bool,
    pub in_t0: bool,
    pub in_tx: bool,
}

impl<C: Coeff> End1Elem<C> {
    pub fn new(w: GroupAlgElem<C>, n: i64) -> Result<Self> {
        if w.max_generator() > 1 {
            return Err(Error::DomainMismatch(format!("{w} is not in the group algebra of F1")));
        }
        Ok(End1Elem { w, n })
    }

    /// Builds ν_(w, g) from an arbitrary word, which must be a power of `x1`.
    pub fn from_word(w: GroupAlgElem<C>, g: &GroupWord) -> Result<Self> {
        let n = g
            .as_power_of(1)
            .ok_or_else(|| Error::DomainMismatch(format!("{g} is not in F1")))?;
        Self::new(w, n)
    }

    pub fn identity() -> Self {
        End1Elem {
            w: GroupAlgElem::one(),
            n: 1,
        }
    }

    pub fn zero() -> Self {
        End1Elem {
            w: GroupAlgElem::zero(),
            n: 0,
        }
    }

    pub fn g(&self) -> GroupWord {
        GroupWord::gen_pow(1, self.n)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let images = BTreeMap::from([(1, self.g())]);
        let u = other
            .w
            .substitute(&images)
            .expect("F1 elements only involve x1");
        End1Elem {
            w: &self.w * &u,
            n: self.n * other.n,
        }
    }

    pub fn to_morphism(&self) -> RepMorphism<C> {
        let obj = RepObject::monogenic();
        RepMorphism::new(obj, obj, vec![RepVector::component(1, self.w.clone())], vec![self.g()])
            .expect("images lie in (W1, F1)")
    }

    pub fn from_morphism(m: &RepMorphism<C>) -> Result<Self> {
        let obj = RepObject::monogenic();
        if m.source() != obj || m.target() != obj {
            return Err(Error::DomainMismatch(format!(
                "{} -> {} is not an endomorphism of {obj}",
                m.source(),
                m.target()
            )));
        }
        Self::from_word(m.module_images()[0].get(1), &m.group_images()[0])
    }

    pub fn class(&self) -> End1Class {
        End1Class {
            in_te: self.n == 0,
            in_t0: self.w.is_zero(),
            in_tx: self.n == 1,
        }
    }

    /// The first-order description of T₀: `ν ∘ μ = μ ∘ ν = ν_(0,e)` for every μ
    /// in T_e. Evaluated against the given members of T_e.
    pub fn annihilates_te(&self, te: &[Self]) -> bool {
        let zero = Self::zero();
        te.iter()
            .all(|mu| self.compose(mu) == zero && mu.compose(self) == zero)
    }

    /// The first-order description of T_x: `ν ∘ μ = μ` for every μ in T₀.
    pub fn fixes_t0(&self, t0: &[Self]) -> bool {
        t0.iter().all(|mu| &self.compose(mu) == mu)
    }
}

impl<C: Coeff> fmt::Display for End1Elem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.w, self.g())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::tests::{ga, G};
    use crate::scalars::{int, Rational};
    use proptest::prelude::*;

    type E = End1Elem<Rational>;

    fn e(w: G, n: i64) -> E {
        E::new(w, n).unwrap()
    }

    fn laurent(cs: &[(i64, i64)]) -> G {
        G::laurent(cs.iter().map(|&(i, c)| (i, int(c))))
    }

    #[test]
    fn compose_example() {
        let a = e(ga(&[(1, &[(1, 1)])]), 2);
        let b = e(laurent(&[(0, 1), (1, 1)]), 3);
        assert_eq!(a.compose(&b), e(laurent(&[(1, 1), (3, 1)]), 6));
        let via = a.to_morphism().compose(&b.to_morphism()).unwrap();
        assert_eq!(E::from_morphism(&via).unwrap(), a.compose(&b));
    }

    #[test]
    fn zero_and_unit() {
        let a = e(laurent(&[(-1, 2), (2, 1)]), -3);
        assert_eq!(a.compose(&E::zero()), E::zero());
        assert_eq!(E::zero().compose(&a), E::zero());
        assert_eq!(a.compose(&E::identity()), a);
        assert_eq!(E::identity().compose(&a), a);
    }

    #[test]
    fn right_unit_in_te() {
        let u = e(laurent(&[(0, 3), (2, -1)]), 0);
        let w = e(laurent(&[(0, 2), (1, -1)]), 0);
        assert_eq!(u.compose(&w), u);
    }

    #[test]
    fn classes() {
        let c = e(G::zero(), 1).class();
        assert!(c.in_t0 && c.in_tx && !c.in_te);
        let c = e(G::one(), 0).class();
        assert!(c.in_te && !c.in_t0 && !c.in_tx);
    }

    #[test]
    fn rejects_foreign_words() {
        assert!(E::new(ga(&[(1, &[(2, 1)])]), 1).is_err());
        assert!(E::from_word(G::one(), &GroupWord::gen_pow(2, 1)).is_err());
    }

    fn elem_strategy() -> impl Strategy<Value = E> {
        let coeffs = prop::collection::vec((-4i64..=4, -2i64..=2), 0..=3);
        (coeffs, -3i64..=3).prop_map(|(cs, n)| e(laurent(&cs), n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn compose_matches_oracle(a in elem_strategy(), b in elem_strategy()) {
            let via = a.to_morphism().compose(&b.to_morphism()).unwrap();
            prop_assert_eq!(E::from_morphism(&via).unwrap(), a.compose(&b));
        }

        #[test]
        fn associative(a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn tx_is_group_algebra(u in elem_strategy(), v in elem_strategy()) {
            let (u, v) = (e(u.w, 1), e(v.w, 1));
            prop_assert_eq!(v.compose(&u), e(&v.w * &u.w, 1));
        }

        #[test]
        fn remark_characterisations(a in elem_strategy(), ws in prop::collection::vec(elem_strategy(), 1..4)) {
            let mut te: Vec<E> = ws.iter().map(|m| e(m.w.clone(), 0)).collect();
            te.push(e(G::one(), 0));
            let mut t0: Vec<E> = ws.iter().map(|m| e(G::zero(), m.n)).collect();
            t0.push(e(G::zero(), 2));
            let class = a.class();
            prop_assert_eq!(class.in_t0, a.annihilates_te(&te));
            prop_assert_eq!(class.in_tx, a.fixes_t0(&t0));
        }
    }
}
