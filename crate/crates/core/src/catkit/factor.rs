//! Recovering Φ = Υ ∘ φ̂ ∘ Ψ from the main function alone.

use std::collections::BTreeMap;

use super::checks::CheckFailure;
use super::{
    AssocAlgebras, AssocKind, Groups, Presentation, QuasiHom, RepKind, Representations, Semigroups,
    Variety,
};
use crate::error::{Error, Result};
use crate::groupalg::RepVector;
use crate::ncpoly::{DerivedSig, NcPoly, Orientation};
use crate::reps::{RepObject, RepPoint};
use crate::scalars::{Coeff, FieldAuto, Scalar};
use crate::words::{GroupWord, MonoidWord, Word};

/// What a variety can read off a main function.
#[derive(Clone, Debug)]
pub struct Recovered<V: Variety> {
    /// Orientation seen in the main function.
    pub detected: Orientation,
    /// The part of it that stays outer (Υ); the rest is absorbed into Ψ.
    pub upsilon: Orientation,
    pub phi: FieldAuto,
    /// Kind of the outer part Υ ∘ φ̂.
    pub outer: V::Kind,
    /// Generator images of ψ_A.
    pub psi: BTreeMap<V::Obj, Vec<V::Elem>>,
    /// Description of the central factor separating s from τ.
    pub central: String,
}

pub trait Factorable: Variety {
    fn recover(aut: &Presentation<Self>, objects: &[Self::Obj]) -> Result<Recovered<Self>>;

    /// The kind of the standard φ-automorphism φ̂.
    fn twist_kind(phi: FieldAuto) -> Self::Kind;

    /// `a · e` for a scalar `a`, where the variety has scalars.
    fn scalar_action(_a: &Scalar, _e: &Self::Elem) -> Option<Self::Elem> {
        None
    }
}

/// The three parts of a presented automorphism.
#[derive(Clone, Debug)]
pub struct Factorization<V: Variety> {
    pub detected: Orientation,
    pub upsilon: Orientation,
    pub phi: FieldAuto,
    pub outer: V::Kind,
    /// Ψ, with identity kind.
    pub inner: Presentation<V>,
    pub central: String,
}

impl<V: Variety> Factorization<V> {
    /// Υ ∘ φ̂ ∘ Ψ as a single presentation.
    pub fn recomposed(&self) -> Presentation<V> {
        Presentation {
            kind: self.outer,
            ..self.inner.clone()
        }
    }
}

/// Splits `aut` on the given objects. ψ⁻¹ is solved for on generators; if the
/// solver gives up, it is read off the factorization of Φ⁻¹ and verified.
pub fn factorize<V: Factorable>(aut: &Presentation<V>, objects: &[V::Obj]) -> Result<Factorization<V>> {
    let rec = V::recover(aut, objects)?;
    let mut rec_inv: Option<Recovered<V>> = None;
    let mut inner = Presentation::<V>::identity()
        .with_sqrt(aut.sqrt)
        .with_fragment(objects.iter().cloned());
    for obj in objects {
        let psi = rec.psi[obj].clone();
        let inverse = match V::invert_images(obj, &psi) {
            Ok(inv) => inv,
            Err(_) => {
                if rec_inv.is_none() {
                    rec_inv = Some(V::recover(&aut.inverse(), objects)?);
                }
                let k = V::kind_inverse(aut.kind);
                rec_inv.as_ref().expect("just set").psi[obj]
                    .iter()
                    .map(|e| V::kind_apply(k, e))
                    .collect()
            }
        };
        inner = inner.with_inner(obj.clone(), psi, Some(inverse))?;
    }
    Ok(Factorization {
        detected: rec.detected,
        upsilon: rec.upsilon,
        phi: rec.phi,
        outer: rec.outer,
        inner,
        central: rec.central,
    })
}

/// The recomposition agrees with `aut` on each sampled morphism.
pub fn verify_factorization<V: Variety>(
    aut: &Presentation<V>,
    fact: &Factorization<V>,
    morphisms: &[QuasiHom<V>],
) -> Result<Vec<CheckFailure>> {
    let re = fact.recomposed();
    let mut out = Vec::new();
    for nu in morphisms {
        let lhs = re.apply_aut(nu)?;
        let rhs = aut.apply_aut(nu)?;
        if lhs != rhs {
            out.push(CheckFailure::new(nu.to_string(), &lhs, &rhs));
        }
    }
    Ok(out)
}

/// φ̂(a·p) = φ(a)·φ̂(p) on the samples.
pub fn verify_twisted_part<V: Factorable>(
    fact: &Factorization<V>,
    samples: &[(V::Obj, Scalar, V::Elem)],
) -> Result<Vec<CheckFailure>> {
    let mut out = Vec::new();
    for (obj, a, p) in samples {
        let twist = QuasiHom::<V>::new(obj.clone(), obj.clone(), V::generators(obj), V::twist_kind(fact.phi))?;
        let Some(ap) = V::scalar_action(a, p) else {
            return Err(Error::WrongVariety(format!("{} has no scalars", V::TAG)));
        };
        let lhs = twist.apply(&ap)?;
        let rhs = V::scalar_action(&fact.phi.apply(a), &twist.apply(p)?).expect("scalars exist");
        if lhs != rhs {
            out.push(CheckFailure::new(format!("a = {a}; p = {p}"), &lhs, &rhs));
        }
    }
    Ok(out)
}

/// An object with at least two generators, where orientation is visible.
fn wide<O: Clone, F: Fn(&O) -> bool>(objects: &[O], wide_enough: F) -> Option<O> {
    objects.iter().find(|o| wide_enough(o)).cloned()
}

fn undetected(what: &str, got: impl ToString) -> Error {
    Error::Precondition(format!("main function is not of the expected form at {what}: {}", got.to_string()))
}

impl Factorable for Semigroups {
    fn recover(aut: &Presentation<Self>, objects: &[u32]) -> Result<Recovered<Self>> {
        let s = |o: &u32, e: &MonoidWord| aut.main_function(o, e);
        let detected = match wide(objects, |o| *o >= 2) {
            None => Orientation::Straight,
            Some(o) => {
                let (s1, s2) = (s(&o, &MonoidWord::generator(1))?, s(&o, &MonoidWord::generator(2))?);
                let s12 = s(&o, &MonoidWord::new(vec![1, 2])?)?;
                if s12 == s1.concat(&s2) {
                    Orientation::Straight
                } else if s12 == s2.concat(&s1) {
                    Orientation::Dual
                } else {
                    return Err(undetected("x1*x2", s12));
                }
            }
        };
        let mut psi = BTreeMap::new();
        for o in objects {
            let imgs = Self::generators(o)
                .iter()
                .map(|x| Ok(Self::kind_apply(detected, &s(o, x)?)))
                .collect::<Result<_>>()?;
            psi.insert(*o, imgs);
        }
        Ok(Recovered {
            detected,
            upsilon: detected,
            phi: FieldAuto::Identity,
            outer: detected,
            psi,
            central: "identity".into(),
        })
    }

    fn twist_kind(_phi: FieldAuto) -> Orientation {
        Orientation::Straight
    }
}

impl Factorable for Groups {
    /// Reversal is inversion after the inner automorphism `x_i ↦ x_i⁻¹`, so it
    /// is absorbed into Ψ and the central factor `g ↦ g⁻¹`.
    fn recover(aut: &Presentation<Self>, objects: &[u32]) -> Result<Recovered<Self>> {
        let s = |o: &u32, e: &GroupWord| aut.main_function(o, e);
        let detected = match wide(objects, |o| *o >= 2) {
            None => Orientation::Straight,
            Some(o) => {
                let (s1, s2) = (s(&o, &GroupWord::generator(1))?, s(&o, &GroupWord::generator(2))?);
                let s12 = s(&o, &GroupWord::generator(1).concat(&GroupWord::generator(2)))?;
                if s12 == s1.concat(&s2) {
                    Orientation::Straight
                } else if s12 == s2.concat(&s1) {
                    Orientation::Dual
                } else {
                    return Err(undetected("x1*x2", s12));
                }
            }
        };
        let mut psi = BTreeMap::new();
        for o in objects {
            let imgs = Self::generators(o)
                .iter()
                .map(|x| {
                    let v = s(o, x)?;
                    Ok(if detected.is_dual() { v.invert() } else { v })
                })
                .collect::<Result<_>>()?;
            psi.insert(*o, imgs);
        }
        Ok(Recovered {
            detected,
            upsilon: Orientation::Straight,
            phi: FieldAuto::Identity,
            outer: Orientation::Straight,
            psi,
            central: if detected.is_dual() { "g -> g^-1".into() } else { "identity".into() },
        })
    }

    fn twist_kind(_phi: FieldAuto) -> Orientation {
        Orientation::Straight
    }
}

impl Factorable for AssocAlgebras {
    fn recover(aut: &Presentation<Self>, objects: &[u32]) -> Result<Recovered<Self>> {
        let s = |o: &u32, e: &NcPoly<Scalar>| aut.main_function(o, e);
        let constant = |a: Scalar| -> Result<Scalar> {
            let v = s(&1, &NcPoly::constant(a.clone()))?;
            v.as_constant().ok_or_else(|| undetected(&a.to_string(), v))
        };
        let z0 = constant(Scalar::zero())?;
        let z1 = constant(Scalar::one())?;
        let sig = DerivedSig::new(z0.clone(), z1.clone(), Orientation::Straight)?;
        let detected = match wide(objects, |o| *o >= 2) {
            None => Orientation::Straight,
            Some(o) => {
                let u1 = s(&o, &NcPoly::generator(1))?;
                let u2 = s(&o, &NcPoly::generator(2))?;
                let u12 = s(&o, &(NcPoly::generator(1) * NcPoly::generator(2)))?;
                if u12 == sig.derived_mul(&u1, &u2) {
                    Orientation::Straight
                } else if u12 == sig.derived_mul(&u2, &u1) {
                    Orientation::Dual
                } else {
                    return Err(undetected("x1*x2", u12));
                }
            }
        };
        let phi = match aut.sqrt {
            None => FieldAuto::Identity,
            Some(d) => {
                let r = Scalar::sqrt(d)?;
                let sr = constant(r.clone())?;
                if sr == sig.s_tilde(&r) {
                    FieldAuto::Identity
                } else if sr == sig.s_tilde(&r.conj()) {
                    FieldAuto::Conjugation
                } else {
                    return Err(undetected(&r.to_string(), sr));
                }
            }
        };
        let outer = AssocKind::new(detected, phi);
        let back = Self::kind_inverse(outer);
        let mut psi = BTreeMap::new();
        for o in objects {
            let imgs = Self::generators(o)
                .iter()
                .map(|x| Ok(Self::kind_apply(back, &sig.central_inv(&s(o, x)?))))
                .collect::<Result<_>>()?;
            psi.insert(*o, imgs);
        }
        Ok(Recovered {
            detected,
            upsilon: detected,
            phi,
            outer,
            psi,
            central: format!("c(u) = ({})u + {}", z1 - z0.clone(), z0),
        })
    }

    fn twist_kind(phi: FieldAuto) -> AssocKind {
        AssocKind::new(Orientation::Straight, phi)
    }

    fn scalar_action(a: &Scalar, e: &NcPoly<Scalar>) -> Option<NcPoly<Scalar>> {
        Some(e.scalar_mul(a))
    }
}

impl Factorable for Representations {
    /// Φ = φ̂ ∘ Ψ: δ is the central inversion after the inner automorphism
    /// `x_i ↦ x_i⁻¹`, so it is absorbed into Ψ.
    fn recover(aut: &Presentation<Self>, objects: &[RepObject]) -> Result<Recovered<Self>> {
        let pi = |o: &RepObject, v: RepVector<Scalar>| -> Result<RepVector<Scalar>> {
            Ok(aut.main_function(o, &RepPoint::new(v, GroupWord::identity()))?.v)
        };
        let varrho = |o: &RepObject, g: GroupWord| -> Result<GroupWord> {
            Ok(aut.main_function(o, &RepPoint::new(RepVector::zero(), g))?.g)
        };
        let detected = match wide(objects, |o| o.x >= 2) {
            None => Orientation::Straight,
            Some(o) => {
                let (x1, x2) = (GroupWord::generator(1), GroupWord::generator(2));
                let (r1, r2) = (varrho(&o, x1.clone())?, varrho(&o, x2.clone())?);
                let r12 = varrho(&o, x1.concat(&x2))?;
                if r12 == r1.concat(&r2) {
                    Orientation::Straight
                } else if r12 == r2.concat(&r1) {
                    Orientation::Dual
                } else {
                    return Err(undetected("x1*x2", r12));
                }
            }
        };
        let phi = match aut.sqrt {
            None => FieldAuto::Identity,
            Some(d) => {
                let m = Self::monogenic();
                let r = Scalar::sqrt(d)?;
                let y1 = RepVector::basis(1);
                let base = pi(&m, y1.clone())?;
                let scaled = pi(&m, y1.scalar_mul(&r))?;
                if scaled == base.scalar_mul(&r) {
                    FieldAuto::Identity
                } else if scaled == base.scalar_mul(&r.conj()) {
                    FieldAuto::Conjugation
                } else {
                    return Err(undetected("sqrt*y1", scaled));
                }
            }
        };
        let mut psi = BTreeMap::new();
        for o in objects {
            let mut imgs = Vec::new();
            for j in 1..=o.y {
                let v = pi(o, RepVector::basis(j))?.twisted(phi.inverse());
                imgs.push(RepPoint::new(v, GroupWord::identity()));
            }
            for i in 1..=o.x {
                let g = varrho(o, GroupWord::generator(i))?;
                let g = if detected.is_dual() { g.invert() } else { g };
                imgs.push(RepPoint::new(RepVector::zero(), g));
            }
            psi.insert(*o, imgs);
        }
        Ok(Recovered {
            detected,
            upsilon: Orientation::Straight,
            phi,
            outer: RepKind::new(false, phi),
            psi,
            central: if detected.is_dual() {
                "(v, g) -> (r*v, g^-1)".into()
            } else {
                "(v, g) -> (r*v, g)".into()
            },
        })
    }

    fn twist_kind(phi: FieldAuto) -> RepKind {
        RepKind::new(false, phi)
    }

    fn scalar_action(a: &Scalar, e: &RepPoint<Scalar>) -> Option<RepPoint<Scalar>> {
        Some(RepPoint::new(e.v.scalar_mul(a), e.g.clone()))
    }
}
