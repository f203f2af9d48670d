use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AssocAlgebras, Presentation, QuasiHom, Representations, Variety};
use crate::error::{Error, Result};
use crate::groupalg::RepVector;
use crate::ncpoly::{DerivedSig, NcPoly};
use crate::reps::{RepObject, RepPoint};
use crate::scalars::{Coeff, Scalar};
use crate::words::{GroupWord, Word};

/// One counterexample: what was fed in and the two sides that differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

impl CheckFailure {
    pub fn new(inputs: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        CheckFailure {
            inputs: inputs.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Φ(ν ∘ μ) = Φ(ν) ∘ Φ(μ) on the given composable pairs, and Φ(id) = id on
/// every object they touch.
pub fn check_functoriality<V: Variety>(
    aut: &Presentation<V>,
    pairs: &[(QuasiHom<V>, QuasiHom<V>)],
) -> Result<Vec<CheckFailure>> {
    let mut out = Vec::new();
    let mut objs = Vec::new();
    for (nu, mu) in pairs {
        let lhs = aut.apply_aut(&nu.compose(mu)?)?;
        let rhs = aut.apply_aut(nu)?.compose(&aut.apply_aut(mu)?)?;
        if lhs != rhs {
            out.push(CheckFailure::new(format!("nu = {nu}; mu = {mu}"), &lhs, &rhs));
        }
        objs.extend([mu.source.clone(), mu.target.clone(), nu.target.clone()]);
    }
    objs.sort();
    objs.dedup();
    for obj in objs {
        let id = QuasiHom::identity(obj);
        let img = aut.apply_aut(&id)?;
        if img != id {
            out.push(CheckFailure::new(format!("identity on {}", id.source), &img, &id));
        }
    }
    Ok(out)
}

/// Central-function check: `c_B(ν(c_A⁻¹(p))) = ν(p)` for each sampled morphism
/// ν: A → B and point p of A, plus `c_A(c_A⁻¹(p)) = p`.
pub fn check_central<V, F, G>(c: F, c_inv: G, cases: &[(QuasiHom<V>, V::Elem)]) -> Result<Vec<CheckFailure>>
where
    V: Variety,
    F: Fn(&V::Obj, &V::Elem) -> Result<V::Elem>,
    G: Fn(&V::Obj, &V::Elem) -> Result<V::Elem>,
{
    let mut out = Vec::new();
    for (nu, p) in cases {
        let q = c_inv(&nu.source, p)?;
        let back = c(&nu.source, &q)?;
        if &back != p {
            out.push(CheckFailure::new(format!("c(c^-1(p)), p = {p}"), &back, p));
            continue;
        }
        let lhs = c(&nu.target, &nu.apply(&q)?)?;
        let rhs = nu.apply(p)?;
        if lhs != rhs {
            out.push(CheckFailure::new(format!("nu = {nu}; p = {p}"), &lhs, &rhs));
        }
    }
    Ok(out)
}

/// θ pushed through the main function agrees with Φ(θ).
pub fn check_push_endomorphism<V: Variety>(
    aut: &Presentation<V>,
    thetas: &[QuasiHom<V>],
) -> Result<Vec<CheckFailure>> {
    let mut out = Vec::new();
    for theta in thetas {
        let lhs = aut.push_endomorphism(theta)?;
        let rhs = aut.apply_aut(theta)?;
        if lhs != rhs {
            out.push(CheckFailure::new(theta.to_string(), &lhs, &rhs));
        }
    }
    Ok(out)
}

/// For each standard ν (given by generator images) and polynomial p:
/// `reinterpret(ν(p))` equals the term p evaluated in the derived structure at
/// the values `reinterpret(ν(x_i))`.
pub fn check_theorem_main<C: Coeff>(
    sig: &DerivedSig<C>,
    cases: &[(Vec<NcPoly<C>>, NcPoly<C>)],
) -> Result<Vec<CheckFailure>> {
    let mut out = Vec::new();
    for (images, p) in cases {
        let map: BTreeMap<u32, NcPoly<C>> = images
            .iter()
            .enumerate()
            .map(|(i, q)| (i as u32 + 1, q.clone()))
            .collect();
        let lhs = sig.reinterpret(&p.substitute(&map)?);
        let values: BTreeMap<u32, NcPoly<C>> = map
            .iter()
            .map(|(&i, q)| (i, sig.reinterpret(q)))
            .collect();
        let rhs = sig.eval_term(p, &values)?;
        if lhs != rhs {
            let imgs: Vec<String> = images.iter().map(|q| q.to_string()).collect();
            out.push(CheckFailure::new(
                format!("sig = ({}, {}, {}); nu = [{}]; p = {p}", sig.z0(), sig.z1(), sig.orientation(), imgs.join(", ")),
                &lhs,
                &rhs,
            ));
        }
    }
    Ok(out)
}

/// Outcome of a basis-image check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisImageReport {
    pub object: String,
    pub images: Vec<String>,
    pub inverse: Option<Vec<String>>,
    pub pass: bool,
    pub reason: Option<String>,
}

/// Whether the endomorphism of `obj` with these generator images is invertible.
pub fn check_basis_images<V: Variety>(obj: &V::Obj, images: &[V::Elem]) -> BasisImageReport {
    let mut report = BasisImageReport {
        object: obj.to_string(),
        images: images.iter().map(|e| e.to_string()).collect(),
        inverse: None,
        pass: false,
        reason: None,
    };
    let verified = V::invert_images(obj, images).and_then(|inv| {
        let f = QuasiHom::<V>::standard(obj.clone(), obj.clone(), images.to_vec())?;
        let g = QuasiHom::<V>::standard(obj.clone(), obj.clone(), inv.clone())?;
        let id = QuasiHom::identity(obj.clone());
        if f.compose(&g)? == id && g.compose(&f)? == id {
            Ok(inv)
        } else {
            Err(Error::NotInvertible("inverse does not compose to the identity".into()))
        }
    });
    match verified {
        Ok(inv) => {
            report.inverse = Some(inv.iter().map(|e| e.to_string()).collect());
            report.pass = true;
        }
        Err(e) => report.reason = Some(e.to_string()),
    }
    report
}

/// The main function maps the basis of `obj` onto a basis.
pub fn check_basis_image<V: Variety>(aut: &Presentation<V>, obj: &V::Obj) -> Result<BasisImageReport> {
    let images = V::generators(obj)
        .iter()
        .map(|g| aut.main_function(obj, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(check_basis_images::<V>(obj, &images))
}

/// `s ∘ τ⁻¹` is a central function: the main function is τ up to a central factor.
pub fn check_inner_and_central<V: Variety>(
    aut: &Presentation<V>,
    cases: &[(QuasiHom<V>, V::Elem)],
) -> Result<Vec<CheckFailure>> {
    let inv = aut.inverse();
    let c = |obj: &V::Obj, p: &V::Elem| aut.main_function(obj, &aut.tau_inv(obj)?.apply(p)?);
    let c_inv = |obj: &V::Obj, p: &V::Elem| aut.tau(obj)?.apply(&inv.main_function(obj, p)?);
    check_central(c, c_inv, cases)
}

/// `s(v, g) = (π(v), ϱ(g))` with `π(v) = s(v, e)`, `ϱ(g) = s(0, g)`, and the
/// premise that `s(v, e)` has trivial group part and `s(0, g)` zero module part.
pub fn check_splitting(
    aut: &Presentation<Representations>,
    obj: &RepObject,
    points: &[RepPoint<Scalar>],
) -> Result<Vec<CheckFailure>> {
    let mut out = Vec::new();
    for p in points {
        let sv = aut.main_function(obj, &RepPoint::new(p.v.clone(), GroupWord::identity()))?;
        let sg = aut.main_function(obj, &RepPoint::new(RepVector::zero(), p.g.clone()))?;
        if !sv.g.is_identity() {
            out.push(CheckFailure::new(format!("s(v, e), v = {}", p.v), &sv.g, "e"));
        }
        if !sg.v.is_zero() {
            out.push(CheckFailure::new(format!("s(0, g), g = {}", p.g), &sg.v, "0"));
        }
        let whole = aut.main_function(obj, p)?;
        let split = RepPoint::new(sv.v, sg.g);
        if whole != split {
            out.push(CheckFailure::new(format!("s(v, g) at {p}"), &whole, &split));
        }
    }
    Ok(out)
}

/// On constants of the monogenic algebra: s maps constants to constants, and
/// `φ* = c⁻¹ ∘ s` with `c(u) = (z1 − z0)u + z0` is multiplicative.
pub fn check_constants(aut: &Presentation<AssocAlgebras>, consts: &[Scalar]) -> Result<Vec<CheckFailure>> {
    let s = |a: &Scalar| aut.main_function(&1, &NcPoly::constant(a.clone()));
    let as_const = |a: &Scalar| -> Result<std::result::Result<Scalar, NcPoly<Scalar>>> {
        let v = s(a)?;
        Ok(v.as_constant().ok_or(v))
    };
    let mut out = Vec::new();
    let (Ok(z0), Ok(z1)) = (as_const(&Scalar::zero())?, as_const(&Scalar::one())?) else {
        out.push(CheckFailure::new("s(0), s(1)", "non-constant", "constant"));
        return Ok(out);
    };
    let diff = z1 - z0.clone();
    let k = diff
        .inv()
        .ok_or_else(|| Error::NotInvertible("s(1) - s(0)".into()))?;
    let star = |u: Scalar| k.clone() * (u - z0.clone());
    for a in consts {
        match as_const(a)? {
            Err(p) => out.push(CheckFailure::new(format!("s({a})"), p, "a constant")),
            Ok(sa) => {
                for b in consts {
                    let (Ok(sb), Ok(sab)) = (as_const(b)?, as_const(&(a.clone() * b.clone()))?) else {
                        continue;
                    };
                    let lhs = star(sab);
                    let rhs = star(sa.clone()) * star(sb);
                    if lhs != rhs {
                        out.push(CheckFailure::new(format!("phi*({a} * {b})"), &lhs, &rhs));
                    }
                }
            }
        }
    }
    Ok(out)
}
