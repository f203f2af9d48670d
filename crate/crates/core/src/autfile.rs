//! Automorphism presentations read from JSON:
//!
//! ```json
//! {"variety": "assoc_algebra", "field": "Q(sqrt 2)", "orientation": "mirror", "phi": "conj",
//!  "inner": {"2": {"x1": "x1 + x2^2"}},
//!  "inner_inverse": {"2": {"x1": "x1 - x2^2"}},
//!  "fragment": ["1", "2", "3"]}
//! ```
//!
//! `inner_inverse` and `fragment` are optional. Generators missing from an
//! inner entry map to themselves.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catkit::{Presentation, VarietyTag};
use crate::error::{Error, Result};
use crate::ncpoly::Orientation;
use crate::parse::{parse_field, ParseVariety};
use crate::reps::RepObject;
use crate::scalars::FieldAuto;

pub type Images = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutFile {
    pub variety: String,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default = "default_orientation")]
    pub orientation: String,
    #[serde(default = "default_phi")]
    pub phi: String,
    #[serde(default)]
    pub inner: BTreeMap<String, Images>,
    #[serde(default)]
    pub inner_inverse: BTreeMap<String, Images>,
    #[serde(default)]
    pub fragment: Option<Vec<String>>,
}

fn default_field() -> String {
    "Q".into()
}

fn default_orientation() -> String {
    "identity".into()
}

fn default_phi() -> String {
    "id".into()
}

/// Objects probed when a file does not name a fragment.
pub trait DefaultObjects: ParseVariety {
    fn default_objects() -> Vec<Self::Obj>;
    /// Objects to try, smallest first, when one has to be inferred.
    fn candidate_objects() -> Vec<Self::Obj>;
}

macro_rules! ranked {
    ($($v:ty),*) => {$(
        impl DefaultObjects for $v {
            fn default_objects() -> Vec<u32> {
                vec![1, 2, 3]
            }

            fn candidate_objects() -> Vec<u32> {
                (1..=16).collect()
            }
        }
    )*};
}

ranked!(crate::catkit::Semigroups, crate::catkit::Groups, crate::catkit::AssocAlgebras);

impl DefaultObjects for crate::catkit::Representations {
    fn default_objects() -> Vec<RepObject> {
        vec![RepObject::new(1, 1), RepObject::new(1, 2), RepObject::new(2, 1), RepObject::new(2, 2)]
    }

    fn candidate_objects() -> Vec<RepObject> {
        let mut objs: Vec<_> = (1..=8).flat_map(|y| (1..=8).map(move |x| RepObject::new(y, x))).collect();
        objs.sort_by_key(|o| (o.y + o.x, o.y));
        objs
    }
}

impl AutFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Presentation(e.to_string()))
    }

    pub fn variety(&self) -> Result<VarietyTag> {
        VarietyTag::parse(&self.variety)
    }

    pub fn sqrt(&self) -> Result<Option<i64>> {
        parse_field(&self.field)
    }

    pub fn orientation(&self) -> Result<Orientation> {
        match self.orientation.as_str() {
            "identity" | "id" | "straight" => Ok(Orientation::Straight),
            "mirror" | "dual" => Ok(Orientation::Dual),
            other => Err(Error::Presentation(format!("orientation must be identity or mirror, got {other}"))),
        }
    }

    pub fn phi(&self) -> Result<FieldAuto> {
        match self.phi.as_str() {
            "id" | "identity" => Ok(FieldAuto::Identity),
            "conj" | "conjugation" => Ok(FieldAuto::Conjugation),
            other => Err(Error::Presentation(format!("phi must be id or conj, got {other}"))),
        }
    }

    /// The presentation and the objects it should be examined on.
    pub fn build<V: DefaultObjects>(&self) -> Result<(Presentation<V>, Vec<V::Obj>)> {
        if self.variety()? != V::TAG {
            return Err(Error::WrongVariety(format!("file is for {}, not {}", self.variety, V::TAG)));
        }
        let sqrt = self.sqrt()?;
        let phi = self.phi()?;
        if !phi.is_identity() && sqrt.is_none() {
            return Err(Error::InvalidField("conjugation needs a field Q(sqrt d)".into()));
        }
        let mut aut = Presentation::<V>::new(V::kind_from(self.orientation()?, phi)?).with_sqrt(sqrt);
        let mut objects: Vec<V::Obj> = match &self.fragment {
            Some(objs) => objs.iter().map(|o| V::parse_object(o)).collect::<Result<_>>()?,
            None => V::default_objects(),
        };
        if let Some(key) = self.inner_inverse.keys().find(|k| !self.inner.contains_key(*k)) {
            return Err(Error::Presentation(format!("inner_inverse for {key} has no inner entry")));
        }
        for (key, named) in &self.inner {
            let obj = V::parse_object(key)?;
            let images = V::parse_images(&obj, named, sqrt)?;
            let inverse = match self.inner_inverse.get(key) {
                Some(inv) => Some(V::parse_images(&obj, inv, sqrt)?),
                None => None,
            };
            aut = aut.with_inner(obj.clone(), images, inverse)?;
            if self.fragment.is_none() && !objects.contains(&obj) {
                objects.push(obj);
            }
        }
        if self.fragment.is_some() {
            if let Some(obj) = aut.inner.keys().find(|o| !objects.contains(o)) {
                return Err(Error::Presentation(format!("inner entry for {obj} lies outside the fragment")));
            }
            aut = aut.with_fragment(objects.iter().cloned());
        }
        objects.sort();
        objects.dedup();
        aut.validate()?;
        Ok((aut, objects))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catkit::{AssocAlgebras, AssocKind, Groups, Representations};
    use crate::ncpoly::NcPoly;

    #[test]
    fn assoc_file() {
        let f = AutFile::from_json(
            r#"{"variety": "assoc_algebra", "field": "Q(sqrt 2)", "orientation": "mirror", "phi": "conj",
                "inner": {"2": {"x1": "x1 + x2^2"}}}"#,
        )
        .unwrap();
        let (aut, objs) = f.build::<AssocAlgebras>().unwrap();
        assert_eq!(aut.kind, AssocKind::new(Orientation::Dual, FieldAuto::Conjugation));
        assert_eq!(objs, vec![1, 2, 3]);
        let x = |i| NcPoly::generator(i);
        assert_eq!(aut.inner[&2].inverse, vec![x(1) - &x(2) * &x(2), x(2)]);
    }

    #[test]
    fn rep_file_and_fragment() {
        let f = AutFile::from_json(
            r#"{"variety": "representation", "orientation": "mirror",
                "inner": {"(2,1)": {"y1": "y2", "y2": "y1"}}, "fragment": ["(1,1)", "(2,1)"]}"#,
        )
        .unwrap();
        let (aut, objs) = f.build::<Representations>().unwrap();
        assert_eq!(objs, vec![RepObject::new(1, 1), RepObject::new(2, 1)]);
        assert!(!aut.covers(&RepObject::new(2, 2)));
    }

    #[test]
    fn bad_files() {
        let parse = |s: &str| AutFile::from_json(s).and_then(|f| f.build::<Groups>().map(|_| ()));
        assert!(matches!(parse(r#"{"variety": "group", "phi": "conj"}"#), Err(Error::InvalidField(_))));
        assert!(matches!(parse(r#"{"variety": "assoc"}"#), Err(Error::WrongVariety(_))));
        assert!(matches!(parse(r#"{"variety": "group", "bogus": 1}"#), Err(Error::Presentation(_))));
        assert!(matches!(
            parse(r#"{"variety": "group", "inner": {"2": {"x3": "x1"}}}"#),
            Err(Error::UnboundGenerator(_))
        ));
        assert!(matches!(
            parse(r#"{"variety": "group", "inner": {"2": {"x1": "x2", "x2": "x2"}}}"#),
            Err(Error::NotInvertible(_))
        ));
    }
}
