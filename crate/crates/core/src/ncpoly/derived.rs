use std::collections::BTreeMap;

use super::{NcPoly, Orientation};
use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// Data of a derived ring structure on a free associative algebra: the new
/// zero `z0`, the new unit `z1` and the orientation of the new product.
///
/// `x ⊥ y = x + y − z0` and `x ⊙ y = k(x − z0)(y − z0) + z0` (factors swapped
/// when dual), where `k = (z1 − z0)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSig<C: Coeff> {
    z0: C,
    z1: C,
    orientation: Orientation,
    k: C,
}

impl<C: Coeff> DerivedSig<C> {
    pub fn new(z0: C, z1: C, orientation: Orientation) -> Result<Self> {
        let diff = z1.clone() - z0.clone();
        if diff.is_zero() {
            return Err(Error::DegenerateSignature(format!("z0 = z1 = {z0}")));
        }
        let k = diff
            .inv()
            .ok_or_else(|| Error::NotInvertible(format!("z1 - z0 = {diff}")))?;
        z0.domain().join(&z1.domain())?;
        Ok(DerivedSig {
            z0,
            z1,
            orientation,
            k,
        })
    }

    /// The source structure itself.
    pub fn trivial() -> Self {
        Self::new(C::zero(), C::one(), Orientation::Straight).expect("0 ≠ 1")
    }

    pub fn z0(&self) -> &C {
        &self.z0
    }

    pub fn z1(&self) -> &C {
        &self.z1
    }

    pub fn k(&self) -> &C {
        &self.k
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The signature of the inverse of [`reinterpret`](Self::reinterpret):
    /// reading the source operations inside the derived structure.
    pub fn inverse(&self) -> Self {
        let k = &self.k;
        let z0 = -(k.clone() * self.z0.clone());
        let z1 = k.clone() * (C::one() - self.z0.clone());
        Self::new(z0, z1, self.orientation).expect("inverse signature is valid")
    }

    fn shift(&self, p: &NcPoly<C>) -> NcPoly<C> {
        p.clone() - NcPoly::constant(self.z0.clone())
    }

    pub fn derived_add(&self, p: &NcPoly<C>, q: &NcPoly<C>) -> NcPoly<C> {
        p.clone() + q.clone() - NcPoly::constant(self.z0.clone())
    }

    pub fn derived_mul(&self, p: &NcPoly<C>, q: &NcPoly<C>) -> NcPoly<C> {
        let (a, b) = match self.orientation {
            Orientation::Straight => (self.shift(p), self.shift(q)),
            Orientation::Dual => (self.shift(q), self.shift(p)),
        };
        (a * b).scalar_mul(&self.k) + NcPoly::constant(self.z0.clone())
    }

    /// The derived negation: the ⊥-inverse `2·z0 − p`.
    pub fn derived_neg(&self, p: &NcPoly<C>) -> NcPoly<C> {
        NcPoly::constant(self.z0.clone() + self.z0.clone()) - p.clone()
    }

    /// s̃(a) = a/k + z0, the image of the constant `a` in the derived structure.
    pub fn s_tilde(&self, a: &C) -> C {
        (self.z1.clone() - self.z0.clone()) * a.clone() + self.z0.clone()
    }

    /// Derived scalar action `a ∘ p = s̃(a) ⊙ p`, which equals `a(p − z0) + z0`.
    pub fn derived_scale(&self, a: &C, p: &NcPoly<C>) -> NcPoly<C> {
        self.shift(p).scalar_mul(a) + NcPoly::constant(self.z0.clone())
    }

    /// The central map c(u) = u/k + z0.
    pub fn central_map(&self, u: &NcPoly<C>) -> NcPoly<C> {
        u.scalar_mul(&(self.z1.clone() - self.z0.clone())) + NcPoly::constant(self.z0.clone())
    }

    /// c⁻¹(v) = k(v − z0).
    pub fn central_inv(&self, v: &NcPoly<C>) -> NcPoly<C> {
        self.shift(v).scalar_mul(&self.k)
    }

    /// Reads `p` as a term in the derived structure: sums become ⊥, products
    /// become ⊙, each coefficient `a` becomes `s̃(a)`, generators stay fixed.
    pub fn reinterpret(&self, p: &NcPoly<C>) -> NcPoly<C> {
        let gens: BTreeMap<u32, NcPoly<C>> = (1..=p.max_generator())
            .map(|i| (i, NcPoly::generator(i)))
            .collect();
        self.eval_term(p, &gens).expect("every generator has an image")
    }

    /// Evaluates the term of `p` (the ⊥-sum over monomials `c·x_{i1}⋯x_{ik}` of
    /// `s̃(c) ⊙ v_{i1} ⊙ ⋯ ⊙ v_{ik}`) at the values `v_i = values[i]`.
    pub fn eval_term(
        &self,
        p: &NcPoly<C>,
        values: &BTreeMap<u32, NcPoly<C>>,
    ) -> Result<NcPoly<C>> {
        let mut acc: Option<NcPoly<C>> = None;
        for (w, c) in p.terms() {
            let mut t = NcPoly::constant(self.s_tilde(c));
            for &i in w.letters() {
                let v = values
                    .get(&i)
                    .ok_or_else(|| Error::UnboundGenerator(format!("x{i}")))?;
                t = self.derived_mul(&t, v);
            }
            acc = Some(match acc {
                None => t,
                Some(a) => self.derived_add(&a, &t),
            });
        }
        Ok(acc.unwrap_or_else(|| NcPoly::constant(self.z0.clone())))
    }
}
