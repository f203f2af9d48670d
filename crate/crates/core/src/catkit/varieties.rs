use std::fmt;

use super::{Variety, VarietyTag};
use crate::error::{Error, Result};
use crate::groupalg::RepVector;
use crate::ncpoly::{image_map, invert_endomorphism, NcPoly, Orientation};
use crate::reps::{mirror_delta, RepMorphism, RepObject, RepPoint};
use crate::scalars::{Coeff, FieldAuto, Scalar};
use crate::words::{nielsen_inverse, word_map, GroupWord, MonoidWord, Word};

/// Free semigroups; objects are generator counts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Semigroups;

/// Free groups; objects are ranks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Groups;

/// Free associative unital algebras over ℚ or ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AssocAlgebras;

/// Free representations (W, F) over ℚ or ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Representations;

impl Variety for Semigroups {
    type Obj = u32;
    type Elem = MonoidWord;
    type Kind = Orientation;

    const TAG: VarietyTag = VarietyTag::Semigroup;

    fn monogenic() -> u32 {
        1
    }

    fn generators(obj: &u32) -> Vec<MonoidWord> {
        (1..=*obj).map(MonoidWord::generator).collect()
    }

    fn contains(obj: &u32, e: &MonoidWord) -> bool {
        !e.is_empty() && e.max_generator() <= *obj
    }

    fn substitute(_source: &u32, images: &[MonoidWord], e: &MonoidWord) -> Result<MonoidWord> {
        e.substitute(&word_map(images))
    }

    fn kind_identity() -> Orientation {
        Orientation::Straight
    }

    fn kind_compose(a: Orientation, b: Orientation) -> Orientation {
        a.compose(b)
    }

    fn kind_inverse(a: Orientation) -> Orientation {
        a
    }

    fn kind_apply(k: Orientation, e: &MonoidWord) -> MonoidWord {
        if k.is_dual() {
            e.reverse()
        } else {
            e.clone()
        }
    }

    fn base_points() -> Vec<MonoidWord> {
        vec![MonoidWord::generator(1)]
    }

    fn combine(mut values: Vec<MonoidWord>) -> MonoidWord {
        values.remove(0)
    }

    fn point_images(a: &MonoidWord) -> Vec<MonoidWord> {
        vec![a.clone()]
    }

    /// Only permutations of the generators are invertible.
    fn invert_images(obj: &u32, images: &[MonoidWord]) -> Result<Vec<MonoidWord>> {
        let mut inv = vec![MonoidWord::identity(); *obj as usize];
        for (i, w) in images.iter().enumerate() {
            let [g] = w.letters() else {
                return Err(Error::NotInvertible(format!("{w} is not a generator")));
            };
            let slot = inv
                .get_mut(*g as usize - 1)
                .ok_or_else(|| Error::NotInvertible(format!("{w} is outside the object")))?;
            if !slot.is_empty() {
                return Err(Error::NotInvertible(format!("x{g} is hit twice")));
            }
            *slot = MonoidWord::generator(i as u32 + 1);
        }
        Ok(inv)
    }
}

impl Variety for Groups {
    type Obj = u32;
    type Elem = GroupWord;
    type Kind = Orientation;

    const TAG: VarietyTag = VarietyTag::Group;

    fn monogenic() -> u32 {
        1
    }

    fn generators(obj: &u32) -> Vec<GroupWord> {
        (1..=*obj).map(GroupWord::generator).collect()
    }

    fn contains(obj: &u32, e: &GroupWord) -> bool {
        e.max_generator() <= *obj
    }

    fn substitute(_source: &u32, images: &[GroupWord], e: &GroupWord) -> Result<GroupWord> {
        e.substitute(&word_map(images))
    }

    fn kind_identity() -> Orientation {
        Orientation::Straight
    }

    fn kind_compose(a: Orientation, b: Orientation) -> Orientation {
        a.compose(b)
    }

    fn kind_inverse(a: Orientation) -> Orientation {
        a
    }

    fn kind_apply(k: Orientation, e: &GroupWord) -> GroupWord {
        if k.is_dual() {
            e.reverse()
        } else {
            e.clone()
        }
    }

    fn base_points() -> Vec<GroupWord> {
        vec![GroupWord::generator(1)]
    }

    fn combine(mut values: Vec<GroupWord>) -> GroupWord {
        values.remove(0)
    }

    fn point_images(a: &GroupWord) -> Vec<GroupWord> {
        vec![a.clone()]
    }

    fn invert_images(_obj: &u32, images: &[GroupWord]) -> Result<Vec<GroupWord>> {
        nielsen_inverse(images)
    }
}

/// Kind of an algebra quasi-homomorphism: η (reversal) and φ̂ (coefficient twist).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AssocKind {
    pub orientation: Orientation,
    pub phi: FieldAuto,
}

impl AssocKind {
    pub const IDENTITY: AssocKind = AssocKind {
        orientation: Orientation::Straight,
        phi: FieldAuto::Identity,
    };

    pub fn new(orientation: Orientation, phi: FieldAuto) -> Self {
        AssocKind { orientation, phi }
    }
}

impl fmt::Display for AssocKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.orientation, self.phi)
    }
}

impl Variety for AssocAlgebras {
    type Obj = u32;
    type Elem = NcPoly<Scalar>;
    type Kind = AssocKind;

    const TAG: VarietyTag = VarietyTag::AssocAlgebra;

    fn monogenic() -> u32 {
        1
    }

    fn generators(obj: &u32) -> Vec<NcPoly<Scalar>> {
        (1..=*obj).map(NcPoly::generator).collect()
    }

    fn contains(obj: &u32, e: &NcPoly<Scalar>) -> bool {
        e.max_generator() <= *obj
    }

    fn substitute(_source: &u32, images: &[NcPoly<Scalar>], e: &NcPoly<Scalar>) -> Result<NcPoly<Scalar>> {
        e.substitute(&image_map(images))
    }

    fn kind_identity() -> AssocKind {
        AssocKind::IDENTITY
    }

    fn kind_compose(a: AssocKind, b: AssocKind) -> AssocKind {
        AssocKind::new(a.orientation.compose(b.orientation), a.phi.compose(b.phi))
    }

    fn kind_inverse(a: AssocKind) -> AssocKind {
        AssocKind::new(a.orientation, a.phi.inverse())
    }

    fn kind_apply(k: AssocKind, e: &NcPoly<Scalar>) -> NcPoly<Scalar> {
        let t = e.twisted(k.phi);
        if k.orientation.is_dual() {
            t.reversed()
        } else {
            t
        }
    }

    fn base_points() -> Vec<NcPoly<Scalar>> {
        vec![NcPoly::generator(1)]
    }

    fn combine(mut values: Vec<NcPoly<Scalar>>) -> NcPoly<Scalar> {
        values.remove(0)
    }

    fn point_images(a: &NcPoly<Scalar>) -> Vec<NcPoly<Scalar>> {
        vec![a.clone()]
    }

    fn invert_images(_obj: &u32, images: &[NcPoly<Scalar>]) -> Result<Vec<NcPoly<Scalar>>> {
        invert_endomorphism(images)
    }
}

/// Kind of a representation quasi-homomorphism: δ (the mirror) and φ̂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RepKind {
    pub delta: bool,
    pub phi: FieldAuto,
}

impl RepKind {
    pub const IDENTITY: RepKind = RepKind {
        delta: false,
        phi: FieldAuto::Identity,
    };

    pub fn new(delta: bool, phi: FieldAuto) -> Self {
        RepKind { delta, phi }
    }

    pub fn orientation(self) -> Orientation {
        if self.delta {
            Orientation::Dual
        } else {
            Orientation::Straight
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.orientation(), self.phi)
    }
}

type Point = RepPoint<Scalar>;

/// Splits point images into a rep morphism out of `source`.
fn rep_morphism(source: &RepObject, images: &[Point]) -> Result<RepMorphism<Scalar>> {
    let ny = source.y as usize;
    let (ys, xs) = images.split_at(ny.min(images.len()));
    if let Some(p) = ys.iter().find(|p| !p.g.is_identity()) {
        return Err(Error::DomainMismatch(format!("module generator image {p} has a group part")));
    }
    if let Some(p) = xs.iter().find(|p| !p.v.is_zero()) {
        return Err(Error::DomainMismatch(format!("group generator image {p} has a module part")));
    }
    let modules: Vec<RepVector<Scalar>> = ys.iter().map(|p| p.v.clone()).collect();
    let groups: Vec<GroupWord> = xs.iter().map(|p| p.g.clone()).collect();
    let target = RepObject::new(
        modules.iter().map(|m| m.max_basis()).max().unwrap_or(0),
        modules
            .iter()
            .map(|m| m.max_generator())
            .chain(groups.iter().map(|g| g.max_generator()))
            .max()
            .unwrap_or(0),
    );
    RepMorphism::new(*source, target, modules, groups)
}

fn morphism_points(m: &RepMorphism<Scalar>) -> Vec<Point> {
    m.module_images()
        .iter()
        .map(|v| RepPoint::new(v.clone(), GroupWord::identity()))
        .chain(
            m.group_images()
                .iter()
                .map(|g| RepPoint::new(RepVector::zero(), g.clone())),
        )
        .collect()
}

impl Variety for Representations {
    type Obj = RepObject;
    type Elem = Point;
    type Kind = RepKind;

    const TAG: VarietyTag = VarietyTag::Representation;

    fn monogenic() -> RepObject {
        RepObject::monogenic()
    }

    /// The points `(y_j, e)` followed by `(0, x_i)`.
    fn generators(obj: &RepObject) -> Vec<Point> {
        morphism_points(&RepMorphism::identity(*obj))
    }

    fn contains(obj: &RepObject, e: &Point) -> bool {
        obj.contains(e)
    }

    fn substitute(source: &RepObject, images: &[Point], e: &Point) -> Result<Point> {
        rep_morphism(source, images)?.apply(e)
    }

    fn kind_identity() -> RepKind {
        RepKind::IDENTITY
    }

    fn kind_compose(a: RepKind, b: RepKind) -> RepKind {
        RepKind::new(a.delta != b.delta, a.phi.compose(b.phi))
    }

    fn kind_inverse(a: RepKind) -> RepKind {
        RepKind::new(a.delta, a.phi.inverse())
    }

    fn kind_apply(k: RepKind, e: &Point) -> Point {
        let p = RepPoint::new(e.v.twisted(k.phi), e.g.clone());
        if k.delta {
            mirror_delta(&p)
        } else {
            p
        }
    }

    fn base_points() -> Vec<Point> {
        Self::generators(&RepObject::monogenic())
    }

    /// `(module part at (y1, e), group part at (0, x1))`.
    fn combine(values: Vec<Point>) -> Point {
        RepPoint::new(values[0].v.clone(), values[1].g.clone())
    }

    fn point_images(a: &Point) -> Vec<Point> {
        vec![
            RepPoint::new(a.v.clone(), GroupWord::identity()),
            RepPoint::new(RepVector::zero(), a.g.clone()),
        ]
    }

    fn invert_images(obj: &RepObject, images: &[Point]) -> Result<Vec<Point>> {
        let m = rep_morphism(obj, images)?;
        let m = RepMorphism::new(*obj, *obj, m.module_images().to_vec(), m.group_images().to_vec())?;
        Ok(morphism_points(&m.inverse()?))
    }

    /// On (W₁, F₁) only `y1 ↦ r·y1`, `x ↦ x^±1` are allowed, so that main
    /// functions split into a module part and a group part.
    fn validate_inner(obj: &RepObject, images: &[Point]) -> Result<()> {
        if *obj != RepObject::monogenic() {
            return Ok(());
        }
        let m = rep_morphism(obj, images)?;
        let w = m.module_images()[0].get(1);
        let scalar = w.num_terms() == 1 && w.coeff(&GroupWord::identity()).inv().is_some();
        let sign = m.group_images()[0].as_power_of(1).is_some_and(|n| n.abs() == 1);
        if scalar && sign {
            Ok(())
        } else {
            Err(Error::Presentation(format!(
                "inner entry on (1,1) must be y1 -> r*y1, x1 -> x1^(+-1); got {}",
                m
            )))
        }
    }
}
