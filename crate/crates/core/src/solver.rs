//! Coefficient comparison for derived operations: expand identities with
//! unknown coefficients, read off one constraint per monomial, and eliminate
//! in the order of the hand derivation. Also the two brute-force searches
//! (semigroup words and derived-action kernels).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupalg::{GroupAlgElem, RepVector};
use crate::ncpoly::{DerivedSig, NcPoly, Orientation};
use crate::reps::derived_action;
use crate::scalars::{int, Coeff, Rational, SymCoeff, SymRing};
use crate::words::{GroupWord, MonoidWord, Word};

type SymPoly = NcPoly<SymCoeff>;

/// Unknowns of the multiplicative template. `b` and `k` appear only during
/// elimination (`a1 = a2 = b`, and `k` for the surviving bilinear coefficient).
pub const MUL_UNKNOWNS: [&str; 11] = ["a11", "a12", "a21", "a22", "a1", "a2", "a", "b", "k", "z0", "z1"];
pub const ADD_UNKNOWNS: [&str; 4] = ["a", "b", "c", "z0"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TemplateKind {
    Additive,
    Multiplicative,
}

/// The general candidate for a derived binary operation in `x = x1`, `y = x2`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpTemplate {
    pub kind: TemplateKind,
    pub ring: SymRing,
    pub poly: SymPoly,
}

impl OpTemplate {
    /// `a·x + b·y + c`.
    pub fn additive() -> Self {
        let ring = SymRing::new(ADD_UNKNOWNS).expect("few unknowns");
        let v = |n: &str| ring.var(n).expect("declared");
        let poly = x().scalar_mul(&v("a")) + y().scalar_mul(&v("b")) + NcPoly::constant(v("c"));
        OpTemplate { kind: TemplateKind::Additive, ring, poly }
    }

    /// `a11·x² + a12·xy + a21·yx + a22·y² + a1·x + a2·y + a`.
    pub fn multiplicative() -> Self {
        let ring = SymRing::new(MUL_UNKNOWNS).expect("few unknowns");
        let v = |n: &str| ring.var(n).expect("declared");
        let poly = (&x() * &x()).scalar_mul(&v("a11"))
            + (&x() * &y()).scalar_mul(&v("a12"))
            + (&y() * &x()).scalar_mul(&v("a21"))
            + (&y() * &y()).scalar_mul(&v("a22"))
            + x().scalar_mul(&v("a1"))
            + y().scalar_mul(&v("a2"))
            + NcPoly::constant(v("a"));
        OpTemplate { kind: TemplateKind::Multiplicative, ring, poly }
    }

    pub fn var(&self, name: &str) -> SymCoeff {
        self.ring.var(name).expect("template unknown")
    }

    /// `p ∘ q` for the candidate operation ∘.
    pub fn apply(&self, p: &SymPoly, q: &SymPoly) -> Result<SymPoly> {
        self.poly.substitute(&BTreeMap::from([(1, p.clone()), (2, q.clone())]))
    }
}

fn x() -> SymPoly {
    NcPoly::generator(1)
}

fn y() -> SymPoly {
    NcPoly::generator(2)
}

fn z() -> SymPoly {
    NcPoly::generator(3)
}

/// Monomials in `x, y, z`, with runs written as powers: `x^2y`.
pub fn monomial_name(w: &MonoidWord) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        out.push_str(match letters[i] {
            1 => "x",
            2 => "y",
            3 => "z",
            _ => "?",
        });
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

/// One coefficient comparison: `lhs = rhs` at `monomial` in `identity`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub identity: String,
    pub monomial: String,
    pub lhs: SymCoeff,
    pub rhs: SymCoeff,
}

impl Constraint {
    /// The polynomial that must vanish.
    pub fn poly(&self) -> SymCoeff {
        self.lhs.clone() - self.rhs.clone()
    }

    fn substitute(&self, values: &BTreeMap<String, SymCoeff>) -> Result<Constraint> {
        Ok(Constraint {
            lhs: self.lhs.substitute_all(values)?,
            rhs: self.rhs.substitute_all(values)?,
            ..self.clone()
        })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} @ {}] {} = 0", self.identity, self.monomial, self.poly())
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ConstraintSet {
    pub constraints: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn extend(&mut self, other: ConstraintSet) {
        self.constraints.extend(other.constraints);
    }

    pub fn find(&self, identity: &str, monomial: &str) -> Option<&Constraint> {
        self.constraints
            .iter()
            .find(|c| c.identity == identity && c.monomial == monomial)
    }

    /// Appends `lhs = rhs` for two scalar expressions, e.g. `z0 = 0`.
    pub fn push_extra(&mut self, lhs: SymCoeff, rhs: SymCoeff) {
        self.constraints.push(Constraint {
            identity: "extra".into(),
            monomial: "1".into(),
            lhs,
            rhs,
        });
    }

    /// True when every constraint vanishes at the given assignment.
    pub fn satisfied_by(&self, values: &BTreeMap<String, Rational>) -> Result<bool> {
        for c in &self.constraints {
            if !c.poly().eval(values)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One constraint per monomial where the two sides differ.
pub fn extract_constraints(identity: &str, lhs: &SymPoly, rhs: &SymPoly) -> ConstraintSet {
    let words: BTreeSet<&MonoidWord> = lhs.terms().chain(rhs.terms()).map(|(w, _)| w).collect();
    let constraints = words
        .into_iter()
        .filter_map(|w| {
            let (l, r) = (lhs.coeff(w), rhs.coeff(w));
            (l != r).then(|| Constraint {
                identity: identity.into(),
                monomial: monomial_name(w),
                lhs: l,
                rhs: r,
            })
        })
        .collect();
    ConstraintSet { constraints }
}

pub const ZERO_LAW: &str = "zero-law";
pub const UNIT_LAW: &str = "unit-law";
pub const ASSOC_XXY: &str = "assoc-xxy";
pub const ASSOC: &str = "assoc";
pub const COMMUTATIVITY: &str = "commutativity";

/// The identities a derived operation has to satisfy, as constraints on the template.
///
/// Additive: `x ⊥ z0 = x`, `z0 ⊥ y = y`, `x ⊥ y = y ⊥ x`.
/// Multiplicative: `x ⊙ z0 = z0 ⊙ y = z0`, `x ⊙ z1 = x`, `z1 ⊙ y = y`,
/// `(x⊙x)⊙y = x⊙(x⊙y)` and `(x⊙y)⊙z = x⊙(y⊙z)`.
pub fn template_constraints(t: &OpTemplate) -> Result<ConstraintSet> {
    let z0 = NcPoly::constant(t.var("z0"));
    let mut cs = ConstraintSet::default();
    match t.kind {
        TemplateKind::Additive => {
            cs.extend(extract_constraints(ZERO_LAW, &t.apply(&x(), &z0)?, &x()));
            cs.extend(extract_constraints(ZERO_LAW, &t.apply(&z0, &y())?, &y()));
            cs.extend(extract_constraints(COMMUTATIVITY, &t.apply(&x(), &y())?, &t.apply(&y(), &x())?));
        }
        TemplateKind::Multiplicative => {
            let z1 = NcPoly::constant(t.var("z1"));
            cs.extend(extract_constraints(ZERO_LAW, &t.apply(&x(), &z0)?, &z0));
            cs.extend(extract_constraints(ZERO_LAW, &t.apply(&z0, &y())?, &z0));
            cs.extend(extract_constraints(UNIT_LAW, &t.apply(&x(), &z1)?, &x()));
            cs.extend(extract_constraints(UNIT_LAW, &t.apply(&z1, &y())?, &y()));
            let xx = t.apply(&x(), &x())?;
            let lhs = t.apply(&xx, &y())?;
            let rhs = t.apply(&x(), &t.apply(&x(), &y())?)?;
            cs.extend(extract_constraints(ASSOC_XXY, &lhs, &rhs));
            let lhs = t.apply(&t.apply(&x(), &y())?, &z())?;
            let rhs = t.apply(&x(), &t.apply(&y(), &z())?)?;
            cs.extend(extract_constraints(ASSOC, &lhs, &rhs));
        }
    }
    Ok(cs)
}

/// A solution family.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub name: String,
    pub orientation: Orientation,
    /// Solved unknowns, in the order they were solved.
    pub assignments: Vec<(String, SymCoeff)>,
    /// Constraints left over that no unknown could be solved from linearly.
    pub side_conditions: Vec<SymCoeff>,
    pub operation: SymPoly,
}

impl Branch {
    pub fn value(&self, name: &str) -> Option<&SymCoeff> {
        self.assignments.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// The operation at numeric `z0, z1`, with `k = (z1 − z0)⁻¹`.
    pub fn instantiate(&self, z0: &Rational, z1: &Rational) -> Result<NcPoly<Rational>> {
        if z0 == z1 {
            return Err(Error::DegenerateSignature("z0 = z1".into()));
        }
        let vals = BTreeMap::from([
            ("z0".to_string(), z0.clone()),
            ("z1".to_string(), z1.clone()),
            ("k".to_string(), (z1 - z0).recip()),
        ]);
        for c in &self.side_conditions {
            if !c.eval(&vals)?.is_zero() {
                return Err(Error::NoSolution { constraint: format!("{c} = 0 at z0 = {z0}, z1 = {z1}") });
            }
        }
        let terms = self
            .operation
            .terms()
            .map(|(w, c)| Ok((w.clone(), c.eval(&vals)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(NcPoly::from_terms(terms))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Elimination {
    pub kind: TemplateKind,
    pub steps: Vec<String>,
    /// The x²y comparison before cancellation, when it was reached.
    pub raw_xxy: Option<String>,
    pub branches: Vec<Branch>,
}

/// Running state: solved values and the log.
struct Eliminator {
    solved: Vec<(String, SymCoeff)>,
    steps: Vec<String>,
}

impl Eliminator {
    fn values(&self) -> BTreeMap<String, SymCoeff> {
        self.solved.iter().cloned().collect()
    }

    /// Records `name = value` and rewrites earlier values.
    fn assign(&mut self, name: &str, value: SymCoeff) -> Result<()> {
        let one = BTreeMap::from([(name.to_string(), value.clone())]);
        for (_, v) in self.solved.iter_mut() {
            *v = v.substitute_all(&one)?;
        }
        self.solved.push((name.to_string(), value));
        Ok(())
    }

    fn current(&self, cs: &[Constraint]) -> Result<Vec<Constraint>> {
        let vals = self.values();
        cs.iter().map(|c| c.substitute(&vals)).collect()
    }

    /// Solves constraints that are linear with rational coefficient in one of
    /// `order`, first match wins, until nothing changes. A constraint that
    /// becomes a nonzero constant is a contradiction.
    fn linear_pass(&mut self, cs: &[Constraint], order: &[&str]) -> Result<()> {
        loop {
            let now = self.current(cs)?;
            check_consistent(&now)?;
            let mut progress = false;
            'outer: for name in order {
                if self.solved.iter().any(|(n, _)| n == name) {
                    continue;
                }
                for c in &now {
                    if let Some(v) = c.poly().solve_linear(name) {
                        self.steps.push(format!("{name} = {v}    [{} @ {}]", c.identity, c.monomial));
                        self.assign(name, v)?;
                        progress = true;
                        break 'outer;
                    }
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }
}

fn check_consistent(cs: &[Constraint]) -> Result<()> {
    for c in cs {
        let p = c.poly();
        if let Some(v) = p.as_constant() {
            if !v.is_zero() {
                return Err(Error::NoSolution { constraint: c.to_string() });
            }
        }
    }
    Ok(())
}

fn of_identity<'c>(cs: &'c ConstraintSet, ids: &[&str]) -> Vec<Constraint> {
    cs.constraints
        .iter()
        .filter(|c| ids.contains(&c.identity.as_str()))
        .cloned()
        .collect()
}

/// Runs the elimination for the template's constraint set (plus any extra
/// constraints appended with [`ConstraintSet::push_extra`]).
pub fn eliminate(t: &OpTemplate, cs: &ConstraintSet) -> Result<Elimination> {
    match t.kind {
        TemplateKind::Additive => eliminate_additive(t, cs),
        TemplateKind::Multiplicative => eliminate_multiplicative(t, cs),
    }
}

fn eliminate_additive(t: &OpTemplate, cs: &ConstraintSet) -> Result<Elimination> {
    let mut e = Eliminator { solved: Vec::new(), steps: Vec::new() };
    e.linear_pass(&of_identity(cs, &["extra"]), &["z0"])?;
    e.linear_pass(&cs.constraints, &["a", "b", "c", "z0"])?;
    let branch = finish_branch(&mut e, cs, "additive", Orientation::Straight, &t.poly)?;
    Ok(Elimination { kind: t.kind, steps: e.steps, raw_xxy: None, branches: vec![branch] })
}

/// Leftover constraints, reduced against the first one that mentions `k`.
fn side_conditions(rest: Vec<SymCoeff>) -> Result<Vec<SymCoeff>> {
    let mut out: Vec<SymCoeff> = Vec::new();
    for p in rest {
        if p.is_zero() || out.iter().any(|q| q == &p || *q == -p.clone()) {
            continue;
        }
        let mut reduced = p.clone();
        for q in &out {
            if q.degree_in("k") == 1 {
                reduced = reduced.pseudo_rem(q, "k")?;
            }
        }
        if !reduced.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

fn finish_branch(
    e: &mut Eliminator,
    cs: &ConstraintSet,
    name: &str,
    orientation: Orientation,
    poly: &SymPoly,
) -> Result<Branch> {
    let now = e.current(&cs.constraints)?;
    check_consistent(&now)?;
    let side = side_conditions(now.iter().map(Constraint::poly).collect())?;
    let vals = e.values();
    let operation = NcPoly::from_terms(
        poly.terms()
            .map(|(w, c)| Ok((w.clone(), c.substitute_all(&vals)?)))
            .collect::<Result<Vec<_>>>()?,
    );
    for s in &side {
        e.steps.push(format!("{name}: side condition {s} = 0"));
    }
    e.steps.push(format!("{name}: {operation}"));
    Ok(Branch {
        name: name.into(),
        orientation,
        assignments: e.solved.clone(),
        side_conditions: side,
        operation,
    })
}

fn eliminate_multiplicative(t: &OpTemplate, cs: &ConstraintSet) -> Result<Elimination> {
    let mut e = Eliminator { solved: Vec::new(), steps: Vec::new() };
    // extra numeric data first
    e.linear_pass(&of_identity(cs, &["extra"]), &["z0", "z1", "k"])?;

    // x ⊙ z0 = z0 ⊙ y = z0 kills the squares ...
    let zero = of_identity(cs, &[ZERO_LAW]);
    e.linear_pass(&zero, &["a11", "a22"])?;
    let squares = ["a11", "a22"].iter().all(|n| e.solved.iter().any(|(m, v)| m == n && v.is_zero()));
    if squares {
        e.steps.push("a11 = a22 = 0".into());
    }

    // ... and forces equal linear coefficients.
    let now = e.current(&zero)?;
    let (a1, a2) = (t.var("a1"), t.var("a2"));
    let diff = a1.clone() - a2.clone();
    let pair = now.iter().find_map(|c1| {
        now.iter().find(|c2| {
            let d = c1.poly() - c2.poly();
            c1.poly().degree_in("a2") == 0 && c2.poly().degree_in("a1") == 0 && (d == diff || d == -diff.clone())
        })
    });
    let mut body = t.poly.clone();
    if pair.is_some() {
        let b = t.var("b");
        e.assign("a1", b.clone())?;
        e.assign("a2", b)?;
        e.steps.push("a1 = a2 = b".into());
    } else {
        e.linear_pass(&zero, &["a1", "a2"])?;
    }
    let vals = e.values();
    body = NcPoly::from_terms(
        body.terms()
            .map(|(w, c)| Ok((w.clone(), c.substitute_all(&vals)?)))
            .collect::<Result<Vec<_>>>()?,
    );
    e.steps.push(format!("x*y = {body}"));

    // (x⊙x)⊙y = x⊙(x⊙y) at x²y.
    let xxy = cs
        .find(ASSOC_XXY, "x^2y")
        .ok_or_else(|| Error::Precondition("no x^2y comparison in the constraint set".into()))?
        .substitute(&vals)?;
    let raw = format!("({}) - ({})", xxy.lhs, xxy.rhs);
    let product = xxy.poly();
    e.steps.push(format!("x^2y: {raw} = {product}"));
    let (a12, a21) = (t.var("a12"), t.var("a21"));
    let splits = product == a12.clone() * a21.clone();
    let mut branches = Vec::new();
    let mut last_err = None;
    if splits {
        e.steps.push(format!("{product} = 0"));
        let base = e.solved.clone();
        let mut steps = std::mem::take(&mut e.steps);
        for (name, orientation, dead, live) in [
            ("straight", Orientation::Straight, "a21", "a12"),
            ("dual", Orientation::Dual, "a12", "a21"),
        ] {
            e.solved = base.clone();
            e.steps = vec![format!("{name}: {dead} = 0, {live} = k")];
            e.assign(dead, SymCoeff::zero())?;
            e.assign(live, t.var("k"))?;
            let run = (|| -> Result<Branch> {
                e.linear_pass(&zero, &["b", "a"])?;
                e.linear_pass(&of_identity(cs, &[ZERO_LAW, ASSOC_XXY, ASSOC, UNIT_LAW]), &["b", "a", "k", "z1", "z0"])?;
                finish_branch(&mut e, cs, name, orientation, &t.poly)
            })();
            steps.append(&mut e.steps);
            match run {
                Ok(b) => branches.push(b),
                Err(Error::NoSolution { constraint }) => {
                    steps.push(format!("{name}: no solution, {constraint}"));
                    last_err = Some(constraint);
                }
                Err(err) => return Err(err),
            }
        }
        e.steps = steps;
    } else {
        e.linear_pass(&cs.constraints, &["a12", "a21", "b", "a", "k", "z1", "z0"])?;
        branches.push(finish_branch(&mut e, cs, "general", Orientation::Straight, &t.poly)?);
    }
    if branches.is_empty() {
        return Err(Error::NoSolution {
            constraint: last_err.unwrap_or_else(|| "every branch is inconsistent".into()),
        });
    }
    Ok(Elimination { kind: t.kind, steps: e.steps, raw_xxy: Some(raw), branches })
}

/// Every assignment of the multiplicative template's seven coefficients from
/// `pool`, at fixed numeric `z0, z1`, that satisfies all constraints. Returned
/// as operations in `x1, x2`.
pub fn exhaustive_mul_search(z0: &Rational, z1: &Rational, pool: &[Rational]) -> Result<Vec<NcPoly<Rational>>> {
    let t = OpTemplate::multiplicative();
    let cs = template_constraints(&t)?;
    let names = ["a11", "a12", "a21", "a22", "a1", "a2", "a"];
    // only the constraints' own unknowns need values; b and k never occur here
    let polys: Vec<SymCoeff> = cs.constraints.iter().map(Constraint::poly).collect();
    let n = pool.len();
    let total = n.pow(names.len() as u32);
    let hits: Vec<NcPoly<Rational>> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut vals = BTreeMap::from([
                ("z0".to_string(), z0.clone()),
                ("z1".to_string(), z1.clone()),
                ("b".to_string(), Rational::zero()),
                ("k".to_string(), Rational::zero()),
            ]);
            for name in names {
                vals.insert(name.to_string(), pool[idx % n].clone());
                idx /= n;
            }
            let ok = polys.iter().all(|p| p.eval(&vals).is_ok_and(|v| v.is_zero()));
            ok.then(|| {
                let terms = t
                    .poly
                    .terms()
                    .map(|(w, c)| (w.clone(), c.eval(&vals).expect("all unknowns bound")))
                    .collect::<Vec<_>>();
                NcPoly::from_terms(terms)
            })
        })
        .collect();
    Ok(hits)
}

/// How a candidate word fared in the semigroup search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemCandidate {
    pub word: String,
    pub associative: bool,
    pub commutative: bool,
    pub degree_ok: bool,
    pub survives: bool,
}

/// The carrier the commutativity option is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SemCarrier {
    /// Free semigroups, no commutativity requirement.
    #[default]
    Free,
    /// Free semigroups, additionally requiring `w(x, y) = w(y, x)`.
    FreeCommutativeLaw,
    /// Free commutative semigroups: words compared up to letter order.
    Commutative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemReport {
    pub max_len: usize,
    pub carrier: SemCarrier,
    pub candidates: Vec<SemCandidate>,
    pub survivors: Vec<String>,
}

fn sem_word_name(w: &MonoidWord) -> String {
    w.letters().iter().map(|&l| if l == 1 { 'x' } else { 'y' }).collect()
}

fn sorted_word(w: &MonoidWord) -> MonoidWord {
    let mut l = w.letters().to_vec();
    l.sort_unstable();
    MonoidWord::new(l).expect("same letters")
}

/// All words in `x, y` of length `1..=max_len`, tested for associativity of
/// `u ∘ v = w(u, v)` and for the degree condition `|w| = 2`.
pub fn enumerate_semigroup_ops(max_len: usize, carrier: SemCarrier) -> Result<SemReport> {
    let mut words: Vec<MonoidWord> = vec![MonoidWord::identity()];
    let mut all = Vec::new();
    for _ in 0..max_len {
        words = words
            .iter()
            .flat_map(|w| [1u32, 2].map(|g| w.concat(&MonoidWord::generator(g))))
            .collect();
        all.extend(words.iter().cloned());
    }
    let norm = |w: MonoidWord| if carrier == SemCarrier::Commutative { sorted_word(&w) } else { w };
    let op = |w: &MonoidWord, u: &MonoidWord, v: &MonoidWord| -> Result<MonoidWord> {
        w.substitute(&BTreeMap::from([(1, u.clone()), (2, v.clone())]))
    };
    let (gx, gy, gz) = (MonoidWord::generator(1), MonoidWord::generator(2), MonoidWord::generator(3));
    let mut candidates = Vec::new();
    let mut seen = BTreeSet::new();
    let mut survivors = Vec::new();
    for w in &all {
        let lhs = op(w, &op(w, &gx, &gy)?, &gz)?;
        let rhs = op(w, &gx, &op(w, &gy, &gz)?)?;
        let associative = norm(lhs) == norm(rhs);
        let commutative = norm(op(w, &gx, &gy)?) == norm(op(w, &gy, &gx)?);
        let degree_ok = w.len() == 2;
        let needs_comm = carrier != SemCarrier::Free;
        let survives = associative && degree_ok && (!needs_comm || commutative);
        if survives && seen.insert(norm(w.clone())) {
            survivors.push(sem_word_name(w));
        }
        candidates.push(SemCandidate { word: sem_word_name(w), associative, commutative, degree_ok, survives });
    }
    Ok(SemReport { max_len, carrier, candidates, survivors })
}

/// Which composition law the derived action is tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ActionLaw {
    /// `(y1•x1)•x2 = y1•(x1x2)`.
    #[default]
    Standard,
    /// `(y1•x1)•x2 = y1•(x2x1)`.
    Mirror,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelReport {
    pub window: (i64, i64),
    pub coeffs: Vec<String>,
    pub rho: Orientation,
    pub law: ActionLaw,
    pub candidates: usize,
    pub survivors: Vec<String>,
    /// Kernels satisfying the law whose action is not faithful (`y1 • x1 = y1`).
    /// They cannot come from an isomorphism of the free structure.
    pub unfaithful: Vec<String>,
}

/// Both sides of the action law for kernel `w`, in (W₂, F₂) at `y1`.
pub fn action_law_sides<C: Coeff>(
    w: &GroupAlgElem<C>,
    rho: Orientation,
    law: ActionLaw,
) -> Result<(RepVector<C>, RepVector<C>)> {
    let (x1, x2) = (GroupWord::generator(1), GroupWord::generator(2));
    let y1 = RepVector::basis(1);
    let lhs = derived_action(&derived_action(&y1, &x1, w, rho)?, &x2, w, rho)?;
    let g = match law {
        ActionLaw::Standard => x1.concat(&x2),
        ActionLaw::Mirror => x2.concat(&x1),
    };
    let rhs = derived_action(&y1, &g, w, rho)?;
    Ok((lhs, rhs))
}

/// All Laurent `w = Σ r_i x^i` with `i` in the window, `r_i` from `coeffs`
/// and augmentation 1, for which the derived action obeys `law` and `x1`
/// still acts non-trivially on `y1`.
pub fn derived_action_kernel_search<C: Coeff + Send + Sync>(
    window: (i64, i64),
    coeffs: &[C],
    rho: Orientation,
    law: ActionLaw,
) -> Result<KernelReport> {
    if window.0 > window.1 || coeffs.is_empty() {
        return Err(Error::Precondition("empty search space".into()));
    }
    let exps: Vec<i64> = (window.0..=window.1).collect();
    let n = coeffs.len();
    let total = n
        .checked_pow(exps.len() as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::Precondition("search space too large".into()))?;
    let found: Vec<(bool, String)> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let w = GroupAlgElem::laurent(exps.iter().map(|&e| {
                let c = coeffs[idx % n].clone();
                idx /= n;
                (e, c)
            }));
            if !w.augmentation().is_one() {
                return None;
            }
            let (l, r) = action_law_sides(&w, rho, law).ok()?;
            let y1 = RepVector::basis(1);
            let faithful = derived_action(&y1, &GroupWord::generator(1), &w, rho).ok()? != y1;
            (l == r).then(|| (faithful, w.to_string()))
        })
        .collect();
    let pick = |want: bool| {
        let mut v: Vec<String> = found.iter().filter(|(f, _)| *f == want).map(|(_, s)| s.clone()).collect();
        v.sort();
        v.dedup();
        v
    };
    let (survivors, unfaithful) = (pick(true), pick(false));
    Ok(KernelReport {
        window,
        coeffs: coeffs.iter().map(|c| c.to_string()).collect(),
        rho,
        law,
        candidates: total,
        survivors,
        unfaithful,
    })
}

/// The expected family `k(x − z0)(y − z0) + z0`, or its mirror.
pub fn expected_family(orientation: Orientation) -> SymPoly {
    let t = OpTemplate::multiplicative();
    let z0 = NcPoly::constant(t.var("z0"));
    let (l, r) = (x() - z0.clone(), y() - z0.clone());
    let prod = if orientation.is_dual() { &r * &l } else { &l * &r };
    prod.scalar_mul(&t.var("k")) + z0
}

/// Checks a numeric instantiation against the derived structure of `(z0, z1)`.
pub fn matches_derived(branch: &Branch, z0: &Rational, z1: &Rational) -> Result<bool> {
    let op = branch.instantiate(z0, z1)?;
    let sig = DerivedSig::new(z0.clone(), z1.clone(), branch.orientation)?;
    let (gx, gy) = (NcPoly::generator(1), NcPoly::generator(2));
    Ok(op == sig.derived_mul(&gx, &gy) && int(0) != z1 - z0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn mul() -> (OpTemplate, ConstraintSet) {
        let t = OpTemplate::multiplicative();
        let cs = template_constraints(&t).unwrap();
        (t, cs)
    }

    fn r(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn zero_law_constraints() {
        let (t, cs) = mul();
        let zero = of_identity(&cs, &[ZERO_LAW]);
        let polys: Vec<SymCoeff> = zero.iter().map(Constraint::poly).collect();
        assert!(polys.contains(&t.var("a11")));
        assert!(polys.contains(&t.var("a22")));
        let z0 = t.var("z0");
        let a1_law = (t.var("a12") + t.var("a21")) * z0.clone() + t.var("a1");
        assert!(polys.contains(&a1_law));
        assert!(polys.contains(&((t.var("a12") + t.var("a21")) * z0 + t.var("a2"))));
    }

    #[test]
    fn xxy_constraint() {
        let (t, cs) = mul();
        let c = cs.find(ASSOC_XXY, "x^2y").unwrap();
        let vals = BTreeMap::from([
            ("a11".to_string(), SymCoeff::zero()),
            ("a22".to_string(), SymCoeff::zero()),
            ("a1".to_string(), t.var("b")),
            ("a2".to_string(), t.var("b")),
        ]);
        let c = c.substitute(&vals).unwrap();
        let (a12, a21) = (t.var("a12"), t.var("a21"));
        assert_eq!(c.lhs, a12.clone() * a12.clone() + a12.clone() * a21.clone());
        assert_eq!(c.rhs, a12.clone() * a12.clone());
        assert_eq!(c.poly(), a12 * a21);
    }

    #[test]
    fn equal_sides_give_nothing() {
        let p = x() + y();
        assert!(extract_constraints("trivial", &p, &p).is_empty());
    }

    #[test]
    fn elimination_follows_the_derivation() {
        let (t, cs) = mul();
        let e = eliminate(&t, &cs).unwrap();
        let pos = |needle: &str| e.steps.iter().position(|s| s == needle).unwrap_or_else(|| panic!("{needle}"));
        let (p1, p2, p3) = (pos("a11 = a22 = 0"), pos("a1 = a2 = b"), pos("a12*a21 = 0"));
        assert!(p1 < p2 && p2 < p3);
        assert_eq!(e.raw_xxy.as_deref(), Some("(a12^2 + a12*a21) - (a12^2)"));
        assert_eq!(e.branches.len(), 2);
        let side = t.var("k") * (t.var("z1") - t.var("z0")) - SymCoeff::one();
        for b in &e.branches {
            assert_eq!(b.operation, expected_family(b.orientation), "{}", b.name);
            assert_eq!(b.side_conditions, vec![side.clone()]);
            assert_eq!(b.value("b"), Some(&(-(t.var("k") * t.var("z0")))));
        }
        assert_eq!(e.branches[0].orientation, Orientation::Straight);
        assert_eq!(e.branches[1].orientation, Orientation::Dual);
    }

    #[test]
    fn standard_signature_collapses() {
        let (t, mut cs) = mul();
        cs.push_extra(t.var("z0"), SymCoeff::zero());
        cs.push_extra(t.var("z1"), SymCoeff::one());
        let e = eliminate(&t, &cs).unwrap();
        let ops: Vec<String> = e.branches.iter().map(|b| b.operation.to_string()).collect();
        assert_eq!(ops, vec!["x1*x2", "x2*x1"]);
        assert!(e.branches.iter().all(|b| b.side_conditions.is_empty()));
    }

    #[test]
    fn degenerate_signature_has_no_solution() {
        let (t, mut cs) = mul();
        cs.push_extra(t.var("z0"), SymCoeff::one());
        cs.push_extra(t.var("z1"), SymCoeff::one());
        assert!(matches!(eliminate(&t, &cs), Err(Error::NoSolution { .. })));
    }

    #[test]
    fn additive_template() {
        let t = OpTemplate::additive();
        let cs = template_constraints(&t).unwrap();
        let e = eliminate(&t, &cs).unwrap();
        let b = &e.branches[0];
        assert_eq!(b.value("a"), Some(&SymCoeff::one()));
        assert_eq!(b.value("b"), Some(&SymCoeff::one()));
        assert_eq!(b.value("c"), Some(&-t.var("z0")));
        assert_eq!(b.operation.to_string(), "x1 + x2 - z0");
    }

    #[test]
    fn grid_instantiations_match_derived_structure() {
        let (t, cs) = mul();
        let e = eliminate(&t, &cs).unwrap();
        for z0 in -1..=3 {
            for z1 in -1..=3 {
                if z0 == z1 {
                    continue;
                }
                for b in &e.branches {
                    assert!(matches_derived(b, &r(z0), &r(z1)).unwrap(), "{} at ({z0}, {z1})", b.name);
                }
            }
        }
        assert!(e.branches[0].instantiate(&r(1), &r(1)).is_err());
    }

    #[test]
    fn small_coefficient_search_finds_only_the_branches() {
        let pool: Vec<Rational> = (-2..=2).map(r).collect();
        let mut found: Vec<String> = exhaustive_mul_search(&r(0), &r(1), &pool)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        found.sort();
        assert_eq!(found, vec!["x1*x2", "x2*x1"]);
    }

    #[test]
    fn semigroup_words() {
        let two = enumerate_semigroup_ops(2, SemCarrier::Free).unwrap();
        assert_eq!(two.survivors, vec!["xy", "yx"]);
        let xx = two.candidates.iter().find(|c| c.word == "xx").unwrap();
        assert!(!xx.associative);
        assert!(enumerate_semigroup_ops(1, SemCarrier::Free).unwrap().survivors.is_empty());
        assert_eq!(enumerate_semigroup_ops(4, SemCarrier::Free).unwrap().survivors, vec!["xy", "yx"]);
        assert!(enumerate_semigroup_ops(2, SemCarrier::FreeCommutativeLaw).unwrap().survivors.is_empty());
        assert_eq!(enumerate_semigroup_ops(2, SemCarrier::Commutative).unwrap().survivors, vec!["xy"]);
    }

    #[test]
    fn kernel_search() {
        let coeffs: Vec<Rational> = [-1, 0, 1, 2].map(r).to_vec();
        let id = derived_action_kernel_search((-2, 2), &coeffs, Orientation::Straight, ActionLaw::Standard).unwrap();
        assert_eq!(id.survivors, vec!["[x1]"]);
        assert_eq!(id.unfaithful, vec!["[e]"]);
        let mm = derived_action_kernel_search((-2, 2), &coeffs, Orientation::Dual, ActionLaw::Mirror).unwrap();
        assert_eq!(mm.survivors, vec!["[x1]"]);
        let im = derived_action_kernel_search((-2, 2), &coeffs, Orientation::Straight, ActionLaw::Mirror).unwrap();
        assert_eq!(im.survivors, vec!["[x1^-1]"]);
        let w = GroupAlgElem::laurent([(0, r(2)), (1, r(-1))]);
        let (l, rr) = action_law_sides(&w, Orientation::Straight, ActionLaw::Standard).unwrap();
        assert_ne!(l, rr);
    }

    #[test]
    fn rational_pool_kernel() {
        let coeffs = vec![rat(1, 2), r(1), r(0)];
        let rep = derived_action_kernel_search((0, 1), &coeffs, Orientation::Straight, ActionLaw::Standard).unwrap();
        assert_eq!(rep.survivors, vec!["[x1]"]);
    }

    proptest::proptest! {
        #[test]
        fn branch_values_solve_every_constraint(z0 in -6i64..6, dz in 1i64..5, num in 1i64..4) {
            let (t, cs) = mul();
            let e = eliminate(&t, &cs).unwrap();
            let z0 = rat(z0, num);
            let z1 = z0.clone() + r(dz);
            let k = (z1.clone() - z0.clone()).recip();
            for b in &e.branches {
                let mut vals = BTreeMap::from([
                    ("z0".to_string(), z0.clone()),
                    ("z1".to_string(), z1.clone()),
                    ("k".to_string(), k.clone()),
                    ("b".to_string(), r(0)),
                ]);
                let base = vals.clone();
                for (n, v) in &b.assignments {
                    vals.insert(n.clone(), v.eval(&base).unwrap());
                }
                for name in ["a11", "a12", "a21", "a22", "a1", "a2", "a"] {
                    proptest::prop_assert!(vals.contains_key(name), "{name} unsolved");
                }
                proptest::prop_assert!(cs.satisfied_by(&vals).unwrap());
            }
        }
    }
}
