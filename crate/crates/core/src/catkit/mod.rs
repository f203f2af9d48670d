//! Finite fragments of categories of free algebras, automorphism
//! presentations and the checks built on them.

mod checks;
mod factor;
mod varieties;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use checks::{
    check_basis_image, check_basis_images, check_central, check_constants, check_functoriality,
    check_inner_and_central, check_push_endomorphism, check_splitting, check_theorem_main,
    BasisImageReport, CheckFailure,
};
pub use factor::{factorize, verify_factorization, verify_twisted_part, Factorable, Factorization, Recovered};
pub use varieties::{AssocAlgebras, AssocKind, Groups, RepKind, Representations, Semigroups};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarietyTag {
    Semigroup,
    Group,
    #[serde(alias = "assoc")]
    AssocAlgebra,
    #[serde(alias = "rep")]
    Representation,
}

impl VarietyTag {
    pub fn name(self) -> &'static str {
        match self {
            VarietyTag::Semigroup => "semigroup",
            VarietyTag::Group => "group",
            VarietyTag::AssocAlgebra => "assoc_algebra",
            VarietyTag::Representation => "representation",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "semigroup" | "sem" => Ok(VarietyTag::Semigroup),
            "group" => Ok(VarietyTag::Group),
            "assoc_algebra" | "assoc" => Ok(VarietyTag::AssocAlgebra),
            "representation" | "rep" => Ok(VarietyTag::Representation),
            other => Err(Error::WrongVariety(format!("unknown variety {other}"))),
        }
    }
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A variety whose free objects form the category under study.
///
/// Quasi-homomorphisms are maps `S ∘ K` where `S` is a standard homomorphism
/// and `K` a fixed-generator map of some kind (mirror, twist, ...).
pub trait Variety: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Obj: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync;
    type Elem: Clone + Eq + fmt::Debug + fmt::Display + Send + Sync;
    type Kind: Copy + Eq + fmt::Debug + fmt::Display + Send + Sync;

    const TAG: VarietyTag;

    /// The monogenic free object.
    fn monogenic() -> Self::Obj;
    /// The free generators, in order.
    fn generators(obj: &Self::Obj) -> Vec<Self::Elem>;
    fn contains(obj: &Self::Obj, e: &Self::Elem) -> bool;
    /// The standard homomorphism out of `source` with the given generator images.
    fn substitute(source: &Self::Obj, images: &[Self::Elem], e: &Self::Elem) -> Result<Self::Elem>;

    fn kind_identity() -> Self::Kind;
    /// `a ∘ b`.
    fn kind_compose(a: Self::Kind, b: Self::Kind) -> Self::Kind;
    fn kind_inverse(a: Self::Kind) -> Self::Kind;
    fn kind_apply(k: Self::Kind, e: &Self::Elem) -> Self::Elem;

    /// Points of the monogenic object at which a main function is read off.
    fn base_points() -> Vec<Self::Elem>;
    /// Assembles the values at [`base_points`](Self::base_points) into one element.
    fn combine(values: Vec<Self::Elem>) -> Self::Elem;
    /// Generator images of the homomorphism α_a out of the monogenic object.
    fn point_images(a: &Self::Elem) -> Vec<Self::Elem>;

    /// Inverts the endomorphism of `obj` with the given generator images.
    fn invert_images(obj: &Self::Obj, images: &[Self::Elem]) -> Result<Vec<Self::Elem>>;

    /// Extra restrictions on inner entries beyond invertibility.
    fn validate_inner(_obj: &Self::Obj, _images: &[Self::Elem]) -> Result<()> {
        Ok(())
    }
}

/// A quasi-homomorphism `S ∘ K` between free objects, stored as its generator
/// images (which are those of `S`) and its kind `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiHom<V: Variety> {
    pub source: V::Obj,
    pub target: V::Obj,
    pub images: Vec<V::Elem>,
    pub kind: V::Kind,
}

impl<V: Variety> QuasiHom<V> {
    pub fn new(source: V::Obj, target: V::Obj, images: Vec<V::Elem>, kind: V::Kind) -> Result<Self> {
        let n = V::generators(&source).len();
        if images.len() != n {
            return Err(Error::DomainMismatch(format!(
                "{source} has {n} generators, got {} images",
                images.len()
            )));
        }
        if let Some(e) = images.iter().find(|e| !V::contains(&target, e)) {
            return Err(Error::DomainMismatch(format!("{e} is not in {target}")));
        }
        Ok(QuasiHom {
            source,
            target,
            images,
            kind,
        })
    }

    pub fn standard(source: V::Obj, target: V::Obj, images: Vec<V::Elem>) -> Result<Self> {
        Self::new(source, target, images, V::kind_identity())
    }

    pub fn identity(obj: V::Obj) -> Self {
        QuasiHom {
            images: V::generators(&obj),
            source: obj.clone(),
            target: obj,
            kind: V::kind_identity(),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.kind == V::kind_identity()
    }

    pub fn apply(&self, e: &V::Elem) -> Result<V::Elem> {
        if !V::contains(&self.source, e) {
            return Err(Error::DomainMismatch(format!("{e} is not in {}", self.source)));
        }
        V::substitute(&self.source, &self.images, &V::kind_apply(self.kind, e))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::DomainMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(QuasiHom {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other
                .images
                .iter()
                .map(|e| self.apply(e))
                .collect::<Result<_>>()?,
            kind: V::kind_compose(self.kind, other.kind),
        })
    }
}

impl<V: Variety> fmt::Display for QuasiHom<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = V::generators(&self.source)
            .iter()
            .zip(&self.images)
            .map(|(g, e)| format!("{g} -> {e}"))
            .collect();
        write!(f, "{} -> {} [{}]: {}", self.source, self.target, self.kind, imgs.join(", "))
    }
}

/// Generator images of a basis automorphism σ_A and of its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerEntry<V: Variety> {
    pub images: Vec<V::Elem>,
    pub inverse: Vec<V::Elem>,
}

/// An automorphism of a fragment, presented as `Φ(ν) = τ_B ∘ ν ∘ τ_A⁻¹` with
/// `τ_A = K ∘ σ_A`: a fixed-generator kind `K` after a basis automorphism σ_A.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<V: Variety> {
    pub kind: V::Kind,
    pub inner: BTreeMap<V::Obj, InnerEntry<V>>,
    /// Objects the presentation covers; `None` means every object, with σ the
    /// identity where no inner entry is given.
    pub fragment: Option<BTreeSet<V::Obj>>,
    /// The square-free `d` of the coefficient field ℚ(√d), if any.
    pub sqrt: Option<i64>,
}

impl<V: Variety> Presentation<V> {
    pub fn new(kind: V::Kind) -> Self {
        Presentation {
            kind,
            inner: BTreeMap::new(),
            fragment: None,
            sqrt: None,
        }
    }

    pub fn identity() -> Self {
        Self::new(V::kind_identity())
    }

    pub fn with_sqrt(mut self, d: Option<i64>) -> Self {
        self.sqrt = d;
        self
    }

    pub fn with_fragment<I: IntoIterator<Item = V::Obj>>(mut self, objs: I) -> Self {
        self.fragment = Some(objs.into_iter().collect());
        self
    }

    /// Adds σ_obj. The inverse is solved for when not supplied; either way
    /// it is verified on generators.
    pub fn with_inner(mut self, obj: V::Obj, images: Vec<V::Elem>, inverse: Option<Vec<V::Elem>>) -> Result<Self> {
        let inverse = match inverse {
            Some(inv) => inv,
            None => V::invert_images(&obj, &images)?,
        };
        let entry = InnerEntry { images, inverse };
        check_entry::<V>(&obj, &entry)?;
        self.inner.insert(obj, entry);
        Ok(self)
    }

    pub fn covers(&self, obj: &V::Obj) -> bool {
        self.fragment.as_ref().is_none_or(|f| f.contains(obj))
    }

    pub fn sigma(&self, obj: &V::Obj) -> Result<InnerEntry<V>> {
        if !self.covers(obj) {
            return Err(Error::MissingInnerData(obj.to_string()));
        }
        Ok(self.inner.get(obj).cloned().unwrap_or_else(|| {
            let gens = V::generators(obj);
            InnerEntry {
                images: gens.clone(),
                inverse: gens,
            }
        }))
    }

    /// τ_A = K ∘ σ_A.
    pub fn tau(&self, obj: &V::Obj) -> Result<QuasiHom<V>> {
        let s = self.sigma(obj)?;
        let images = s.images.iter().map(|e| V::kind_apply(self.kind, e)).collect();
        QuasiHom::new(obj.clone(), obj.clone(), images, self.kind)
    }

    /// τ_A⁻¹ = σ_A⁻¹ ∘ K⁻¹.
    pub fn tau_inv(&self, obj: &V::Obj) -> Result<QuasiHom<V>> {
        let s = self.sigma(obj)?;
        QuasiHom::new(obj.clone(), obj.clone(), s.inverse, V::kind_inverse(self.kind))
    }

    /// Φ(ν) = τ_B ∘ ν ∘ τ_A⁻¹.
    pub fn apply_aut(&self, nu: &QuasiHom<V>) -> Result<QuasiHom<V>> {
        if !nu.is_standard() {
            return Err(Error::Precondition(format!("{nu} is not a standard morphism")));
        }
        let out = self
            .tau(&nu.target)?
            .compose(nu)?
            .compose(&self.tau_inv(&nu.source)?)?;
        debug_assert!(out.is_standard());
        Ok(out)
    }

    /// s_A(a) = Φ(α_a)(x₀).
    pub fn main_function(&self, obj: &V::Obj, a: &V::Elem) -> Result<V::Elem> {
        let m = V::monogenic();
        let alpha = QuasiHom::standard(m.clone(), obj.clone(), V::point_images(a))?;
        let f = self.tau(obj)?.compose(&alpha)?.compose(&self.tau_inv(&m)?)?;
        let values = V::base_points()
            .iter()
            .map(|p| f.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(V::combine(values))
    }

    /// θ_{s(a₁),…,s(aₙ)} for θ = θ_{a₁,…,aₙ}. Requires s to fix the generators.
    pub fn push_endomorphism(&self, theta: &QuasiHom<V>) -> Result<QuasiHom<V>> {
        if theta.source != theta.target || !theta.is_standard() {
            return Err(Error::Precondition(format!("{theta} is not a standard endomorphism")));
        }
        let obj = &theta.source;
        for g in V::generators(obj) {
            let sg = self.main_function(obj, &g)?;
            if sg != g {
                return Err(Error::Precondition(format!("s moves {g} to {sg}")));
            }
        }
        let images = theta
            .images
            .iter()
            .map(|a| self.main_function(obj, a))
            .collect::<Result<_>>()?;
        QuasiHom::standard(obj.clone(), obj.clone(), images)
    }

    /// The presentation of Φ⁻¹.
    pub fn inverse(&self) -> Self {
        let k = self.kind;
        let inner = self
            .inner
            .iter()
            .map(|(obj, e)| {
                let entry = InnerEntry {
                    images: e.inverse.iter().map(|x| V::kind_apply(k, x)).collect(),
                    inverse: e.images.iter().map(|x| V::kind_apply(k, x)).collect(),
                };
                (obj.clone(), entry)
            })
            .collect();
        Presentation {
            kind: V::kind_inverse(k),
            inner,
            fragment: self.fragment.clone(),
            sqrt: self.sqrt,
        }
    }

    /// Checks σ_A ∘ σ_A⁻¹ = σ_A⁻¹ ∘ σ_A = id for every entry.
    pub fn validate(&self) -> Result<()> {
        for (obj, e) in &self.inner {
            check_entry::<V>(obj, e)?;
        }
        Ok(())
    }
}

fn check_entry<V: Variety>(obj: &V::Obj, e: &InnerEntry<V>) -> Result<()> {
    V::validate_inner(obj, &e.images)?;
    let s = QuasiHom::<V>::standard(obj.clone(), obj.clone(), e.images.clone())?;
    let t = QuasiHom::<V>::standard(obj.clone(), obj.clone(), e.inverse.clone())?;
    let id = QuasiHom::<V>::identity(obj.clone());
    if s.compose(&t)? != id || t.compose(&s)? != id {
        return Err(Error::Presentation(format!("inner entry on {obj} is not inverted by the given inverse")));
    }
    Ok(())
}
