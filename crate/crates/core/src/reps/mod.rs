//! Free group representations (W, F): W a free RF-module, F a free group.

mod end1;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groupalg::{GroupAlgElem, RepVector};
use crate::ncpoly::Orientation;
use crate::scalars::Coeff;
use crate::words::{nielsen_inverse, word_map, GroupWord, Word};

pub use end1::{End1Class, End1Elem};

/// The free representation with module basis `y1..y_y` and group basis `x1..x_x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepObject {
    pub y: u32,
    pub x: u32,
}

impl RepObject {
    pub fn new(y: u32, x: u32) -> Self {
        RepObject { y, x }
    }

    /// The regular representation (W₁, F₁).
    pub fn monogenic() -> Self {
        RepObject { y: 1, x: 1 }
    }

    pub fn contains_vector<C: Coeff>(&self, v: &RepVector<C>) -> bool {
        v.max_basis() <= self.y && v.max_generator() <= self.x
    }

    pub fn contains_word(&self, g: &GroupWord) -> bool {
        g.max_generator() <= self.x
    }

    pub fn contains<C: Coeff>(&self, p: &RepPoint<C>) -> bool {
        self.contains_vector(&p.v) && self.contains_word(&p.g)
    }
}

impl fmt::Display for RepObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.y, self.x)
    }
}

/// An element of the underlying set W × F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepPoint<C: Coeff> {
    pub v: RepVector<C>,
    pub g: GroupWord,
}

impl<C: Coeff> RepPoint<C> {
    pub fn new(v: RepVector<C>, g: GroupWord) -> Self {
        RepPoint { v, g }
    }

    /// The point `(v · g', g)` where the action is the module action.
    pub fn acted(&self) -> RepVector<C> {
        self.v.act(&self.g)
    }
}

impl<C: Coeff> fmt::Display for RepPoint<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.v, self.g)
    }
}

/// A homomorphism of free representations, given by the images of the module
/// basis and of the group basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism<C: Coeff> {
    source: RepObject,
    target: RepObject,
    module_images: Vec<RepVector<C>>,
    group_images: Vec<GroupWord>,
}

impl<C: Coeff> RepMorphism<C> {
    pub fn new(
        source: RepObject,
        target: RepObject,
        module_images: Vec<RepVector<C>>,
        group_images: Vec<GroupWord>,
    ) -> Result<Self> {
        if module_images.len() != source.y as usize || group_images.len() != source.x as usize {
            return Err(Error::DomainMismatch(format!(
                "source {source} needs {} module and {} group images",
                source.y, source.x
            )));
        }
        for m in &module_images {
            if !target.contains_vector(m) {
                return Err(Error::DomainMismatch(format!("{m} is not in {target}")));
            }
        }
        for g in &group_images {
            if !target.contains_word(g) {
                return Err(Error::DomainMismatch(format!("{g} is not in {target}")));
            }
        }
        Ok(RepMorphism {
            source,
            target,
            module_images,
            group_images,
        })
    }

    pub fn identity(obj: RepObject) -> Self {
        RepMorphism {
            source: obj,
            target: obj,
            module_images: (1..=obj.y).map(RepVector::basis).collect(),
            group_images: (1..=obj.x).map(GroupWord::generator).collect(),
        }
    }

    pub fn source(&self) -> RepObject {
        self.source
    }

    pub fn target(&self) -> RepObject {
        self.target
    }

    pub fn module_images(&self) -> &[RepVector<C>] {
        &self.module_images
    }

    pub fn group_images(&self) -> &[GroupWord] {
        &self.group_images
    }

    fn group_map(&self) -> BTreeMap<u32, GroupWord> {
        self.group_images
            .iter()
            .enumerate()
            .map(|(i, g)| (i as u32 + 1, g.clone()))
            .collect()
    }

    /// μ⁽²⁾: the substitution on the group.
    pub fn apply_group(&self, g: &GroupWord) -> Result<GroupWord> {
        g.substitute(&self.group_map())
    }

    /// μ⁽¹⁾: `Σ y_j P_j ↦ Σ m_j · μ⁽²⁾(P_j)`.
    pub fn apply_module(&self, v: &RepVector<C>) -> Result<RepVector<C>> {
        let map = self.group_map();
        let mut out = RepVector::zero();
        for (&j, p) in v.components() {
            let m = self
                .module_images
                .get(j as usize - 1)
                .ok_or_else(|| Error::UnboundGenerator(format!("y{j}")))?;
            out = out.try_add(&m.mul_right(&p.substitute(&map)?))?;
        }
        Ok(out)
    }

    pub fn apply(&self, p: &RepPoint<C>) -> Result<RepPoint<C>> {
        if !self.source.contains(p) {
            return Err(Error::DomainMismatch(format!(
                "{p} is not in {}",
                self.source
            )));
        }
        Ok(RepPoint::new(self.apply_module(&p.v)?, self.apply_group(&p.g)?))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::DomainMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(RepMorphism {
            source: other.source,
            target: self.target,
            module_images: other
                .module_images
                .iter()
                .map(|m| self.apply_module(m))
                .collect::<Result<_>>()?,
            group_images: other
                .group_images
                .iter()
                .map(|g| self.apply_group(g))
                .collect::<Result<_>>()?,
        })
    }
}

impl<C: Coeff> RepMorphism<C> {
    /// The inverse automorphism: Nielsen reduction on the group part, then
    /// Gauss-Jordan with unit pivots over the group algebra for the module part.
    /// Failure to find unit pivots is reported as `NotInvertible` without proof.
    pub fn inverse(&self) -> Result<Self> {
        if self.source != self.target {
            return Err(Error::NotInvertible(format!(
                "{} -> {} is not an endomorphism",
                self.source, self.target
            )));
        }
        let obj = self.source;
        let group_inv = if obj.x == 0 { Vec::new() } else { nielsen_inverse(&self.group_images)? };
        let back = word_map(&group_inv);
        let n = obj.y as usize;
        // a[l][j] = component l of the image of y_j
        let mut a: Vec<Vec<GroupAlgElem<C>>> = (0..n)
            .map(|l| (0..n).map(|j| self.module_images[j].get(l as u32 + 1)).collect())
            .collect();
        let mut aug: Vec<Vec<GroupAlgElem<C>>> = (0..n)
            .map(|l| (0..n).map(|j| if l == j { GroupAlgElem::one() } else { GroupAlgElem::zero() }).collect())
            .collect();
        let mut pivot_row = vec![usize::MAX; n];
        let mut row_done = vec![false; n];
        for _ in 0..n {
            let found = (0..n).filter(|&r| !row_done[r]).find_map(|r| {
                (0..n)
                    .filter(|&c| pivot_row[c] == usize::MAX)
                    .find_map(|c| a[r][c].unit_inverse().map(|u| (r, c, u)))
            });
            let (r, c, u) = found.ok_or_else(|| {
                Error::NotInvertible("no unit pivot in the module matrix".into())
            })?;
            for v in a[r].iter_mut().chain(aug[r].iter_mut()) {
                *v = &u * v;
            }
            for m in (0..n).filter(|&m| m != r) {
                let factor = a[m][c].clone();
                if factor.is_zero() {
                    continue;
                }
                for col in 0..n {
                    a[m][col] = a[m][col].clone() - &factor * &a[r][col];
                    aug[m][col] = aug[m][col].clone() - &factor * &aug[r][col];
                }
            }
            row_done[r] = true;
            pivot_row[c] = r;
        }
        // A⁻¹ has row c equal to the reduced augmented row that pivoted on c
        let mut module_images = Vec::with_capacity(n);
        for k in 0..n {
            let mut v = RepVector::zero();
            for (j, &r) in pivot_row.iter().enumerate() {
                let q = aug[r][k].substitute(&back)?;
                v = v.try_add(&RepVector::component(j as u32 + 1, q))?;
            }
            module_images.push(v);
        }
        let inv = RepMorphism {
            source: obj,
            target: obj,
            module_images,
            group_images: group_inv,
        };
        let id = Self::identity(obj);
        if self.compose(&inv)? != id || inv.compose(self)? != id {
            return Err(Error::NotInvertible("candidate inverse failed verification".into()));
        }
        Ok(inv)
    }
}

impl<C: Coeff> fmt::Display for RepMorphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, m) in self.module_images.iter().enumerate() {
            parts.push(format!("y{} -> {m}", j + 1));
        }
        for (i, g) in self.group_images.iter().enumerate() {
            parts.push(format!("x{} -> {g}", i + 1));
        }
        write!(f, "{} -> {}: {}", self.source, self.target, parts.join(", "))
    }
}

/// The mirror automorphism δ: `(v, g) ↦ (v̄⁻¹, ḡ)`.
pub fn mirror_delta<C: Coeff>(p: &RepPoint<C>) -> RepPoint<C> {
    RepPoint::new(p.v.bar().inv_words(), p.g.reverse())
}

/// The central function `(v, g) ↦ (v, g⁻¹)`.
pub fn central_inv<C: Coeff>(p: &RepPoint<C>) -> RepPoint<C> {
    RepPoint::new(p.v.clone(), p.g.invert())
}

/// The derived action `v • g = v · Σ r_i ρ(g)^i` for the kernel
/// `w = Σ r_i x^i`, where ρ is the identity or word reversal.
pub fn derived_action<C: Coeff>(
    v: &RepVector<C>,
    g: &GroupWord,
    w: &GroupAlgElem<C>,
    rho: Orientation,
) -> Result<RepVector<C>> {
    let aug = w.augmentation();
    if !aug.is_one() {
        return Err(Error::InvalidActionKernel(aug.to_string()));
    }
    let base = match rho {
        Orientation::Straight => g.clone(),
        Orientation::Dual => g.reverse(),
    };
    let mut sum = GroupAlgElem::zero();
    for (word, r) in w.terms() {
        let i = word.as_power_of(1).ok_or_else(|| {
            Error::DomainMismatch(format!("kernel word {word} is not a power of x1"))
        })?;
        sum = sum + GroupAlgElem::term(r.clone(), base.pow(i));
    }
    Ok(v.mul_right(&sum))
}
