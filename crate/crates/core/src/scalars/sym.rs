use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;

use super::{int, Coeff, Domain, Rational};
use crate::error::{Error, Result};

/// The list of unknowns a symbolic computation runs over, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymRing {
    names: Arc<[String]>,
}

impl SymRing {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        if set.len() > u16::MAX as usize {
            return Err(Error::DomainMismatch("too many unknowns".into()));
        }
        Ok(SymRing {
            names: set.into_iter().collect::<Vec<_>>().into(),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn index(&self, name: &str) -> Result<u16> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u16)
            .ok_or_else(|| Error::UnboundGenerator(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<SymCoeff> {
        let i = self.index(name)?;
        let mut terms = BTreeMap::new();
        terms.insert(SymMonomial(vec![(i, 1)]), int(1));
        Ok(SymCoeff {
            unknowns: Some(self.names.clone()),
            terms,
        })
    }

    pub fn constant(&self, r: Rational) -> SymCoeff {
        SymCoeff::constant(r)
    }
}

/// A power product of unknowns, stored sparsely as (index, exponent) pairs.
///
/// The order puts higher total degree first, then compares exponent vectors
/// lexicographically from the first unknown, larger exponent first; this is
/// the printing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymMonomial(Vec<(u16, u32)>);

impl SymMonomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: u16) -> u32 {
        self.0
            .iter()
            .find(|&&(i, _)| i == var)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &SymMonomial) -> SymMonomial {
        let mut out: Vec<(u16, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(a, e)), Some(&(b, f))) if a == b => {
                    out.push((a, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, e)), Some(&(b, _))) if a < b => {
                    out.push((a, e));
                    i += 1;
                }
                (Some(&(a, e)), None) => {
                    out.push((a, e));
                    i += 1;
                }
                (_, Some(&(b, f))) => {
                    out.push((b, f));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SymMonomial(out)
    }

    fn without(&self, var: u16) -> SymMonomial {
        SymMonomial(self.0.iter().copied().filter(|&(i, _)| i != var).collect())
    }
}

impl Ord for SymMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(a, e)), Some(&(b, f))) => {
                        if a != b {
                            // the one mentioning the earlier unknown comes first
                            return a.cmp(&b);
                        }
                        if e != f {
                            return f.cmp(&e);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for SymMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A commutative polynomial with rational coefficients in named unknowns.
///
/// Constants carry no unknown list, so `zero()` and `one()` are context free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymCoeff {
    unknowns: Option<Arc<[String]>>,
    terms: BTreeMap<SymMonomial, Rational>,
}

impl SymCoeff {
    pub fn constant(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(SymMonomial::default(), r);
        }
        SymCoeff {
            unknowns: None,
            terms,
        }
    }

    fn build(unknowns: Option<Arc<[String]>>, terms: BTreeMap<SymMonomial, Rational>) -> Self {
        let constant = terms.keys().all(SymMonomial::is_one);
        SymCoeff {
            unknowns: if constant { None } else { unknowns },
            terms,
        }
    }

    fn join(&self, other: &Self) -> Result<Option<Arc<[String]>>> {
        match (&self.unknowns, &other.unknowns) {
            (Some(a), Some(b)) if a != b => Err(Error::DomainMismatch(format!(
                "unknowns [{}] vs [{}]",
                a.join(", "),
                b.join(", ")
            ))),
            (a, b) => Ok(a.clone().or_else(|| b.clone())),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let u = self.join(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Self::build(u, terms))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let u = self.join(other)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                add_term(&mut terms, m.mul(n), c * d);
            }
        }
        Ok(Self::build(u, terms))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::constant(Rational::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * r))
            .collect();
        Self::build(self.unknowns.clone(), terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(int(1));
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn unknowns(&self) -> Option<&[String]> {
        self.unknowns.as_deref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&SymMonomial::default())
                .cloned(),
            _ => None,
        }
    }

    fn var_index(&self, name: &str) -> Option<u16> {
        self.unknowns
            .as_ref()?
            .iter()
            .position(|n| n == name)
            .map(|i| i as u16)
    }

    /// Names of the unknowns that actually occur.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        if let Some(names) = &self.unknowns {
            for m in self.terms.keys() {
                for &(i, _) in &m.0 {
                    out.insert(names[i as usize].clone());
                }
            }
        }
        out
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(v) => self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0),
            None => 0,
        }
    }

    /// The coefficient of `name^deg`, as a polynomial in the other unknowns.
    pub fn coeff_of(&self, name: &str, deg: u32) -> SymCoeff {
        let Some(v) = self.var_index(name) else {
            return if deg == 0 {
                self.clone()
            } else {
                Self::constant(Rational::zero())
            };
        };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(v) == deg)
            .map(|(m, c)| (m.without(v), c.clone()))
            .collect();
        Self::build(self.unknowns.clone(), terms)
    }

    /// Replaces one unknown by a polynomial.
    pub fn substitute(&self, name: &str, value: &SymCoeff) -> Result<SymCoeff> {
        if self.var_index(name).is_none() {
            return Ok(self.clone());
        }
        self.join(value)?;
        let mut acc = Self::constant(Rational::zero());
        // group by exponent so each power of `value` is built once
        let deg = self.degree_in(name);
        let mut power = Self::constant(int(1));
        for e in 0..=deg {
            let rest = self.coeff_of(name, e);
            if !rest.is_empty() {
                acc = acc.try_add(&rest.try_mul(&power)?)?;
            }
            power = power.try_mul(value)?;
        }
        Ok(acc)
    }

    pub fn substitute_all(&self, values: &BTreeMap<String, SymCoeff>) -> Result<SymCoeff> {
        let mut acc = self.clone();
        for (name, value) in values {
            acc = acc.substitute(name, value)?;
        }
        Ok(acc)
    }

    /// Evaluates at a rational assignment; unassigned unknowns are an error.
    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let names = self.unknowns.as_deref().unwrap_or(&[]);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in &m.0 {
                let name = &names[i as usize];
                let x = values
                    .get(name)
                    .ok_or_else(|| Error::UnboundGenerator(name.clone()))?;
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// If `self` is `c·name + rest` with rational `c ≠ 0` and `rest` free of
    /// `name`, returns the value `−rest/c` that makes `self` vanish.
    pub fn solve_linear(&self, name: &str) -> Option<SymCoeff> {
        if self.degree_in(name) != 1 {
            return None;
        }
        let c = self.coeff_of(name, 1).as_constant()?;
        let rest = self.coeff_of(name, 0);
        Some(rest.scale(&(-c.recip())))
    }

    /// Pseudo-remainder of `self` by `g` with respect to the unknown `name`.
    pub fn pseudo_rem(&self, g: &SymCoeff, name: &str) -> Result<SymCoeff> {
        let dg = g.degree_in(name);
        if g.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let lc = g.coeff_of(name, dg);
        let mut r = self.clone();
        let x = match g.var_index(name).or_else(|| self.var_index(name)) {
            Some(_) => {
                let ring = SymRing {
                    names: self.join(g)?.expect("unknown list present"),
                };
                ring.var(name)?
            }
            None => return Ok(Self::constant(Rational::zero())),
        };
        while !r.is_empty() && r.degree_in(name) >= dg {
            let dr = r.degree_in(name);
            let lr = r.coeff_of(name, dr);
            let shift = x.pow(dr - dg);
            r = r.try_mul(&lc)? - lr.try_mul(&shift)?.try_mul(g)?;
        }
        Ok(r)
    }

    fn fmt_monomial(&self, m: &SymMonomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.unknowns.as_deref().unwrap_or(&[]);
        for (k, &(i, e)) in m.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(&names[i as usize])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn add_term(terms: &mut BTreeMap<SymMonomial, Rational>, m: SymMonomial, c: Rational) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl From<Rational> for SymCoeff {
    fn from(r: Rational) -> Self {
        SymCoeff::constant(r)
    }
}

impl Add for SymCoeff {
    type Output = SymCoeff;
    fn add(self, rhs: SymCoeff) -> SymCoeff {
        self.try_add(&rhs).expect("unknown lists differ")
    }
}

impl Sub for SymCoeff {
    type Output = SymCoeff;
    fn sub(self, rhs: SymCoeff) -> SymCoeff {
        self.try_add(&-rhs).expect("unknown lists differ")
    }
}

impl Mul for SymCoeff {
    type Output = SymCoeff;
    fn mul(self, rhs: SymCoeff) -> SymCoeff {
        self.try_mul(&rhs).expect("unknown lists differ")
    }
}

impl Neg for SymCoeff {
    type Output = SymCoeff;
    fn neg(self) -> SymCoeff {
        SymCoeff {
            unknowns: self.unknowns,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Coeff for SymCoeff {
    fn zero() -> Self {
        SymCoeff::constant(Rational::zero())
    }
    fn one() -> Self {
        SymCoeff::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        SymCoeff::constant(int(n))
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(SymCoeff::constant(r.clone()))
    }
    fn inv(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!c.is_zero()).then(|| SymCoeff::constant(c.recip()))
    }
    fn domain(&self) -> Domain {
        match &self.unknowns {
            Some(u) => Domain::Unknowns(u.clone()),
            None => Domain::Any,
        }
    }
    fn is_atomic(&self) -> bool {
        self.terms.len() <= 1
    }
}

impl fmt::Display for SymCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn ring() -> SymRing {
        SymRing::new(["a21", "a12", "b", "z0"]).unwrap()
    }

    #[test]
    fn names_sorted() {
        assert_eq!(ring().names(), &["a12", "a21", "b", "z0"]);
    }

    #[test]
    fn products() {
        let r = ring();
        let a12 = r.var("a12").unwrap();
        let a21 = r.var("a21").unwrap();
        assert_eq!((a12.clone() * a21.clone()).to_string(), "a12*a21");
        let sq = (a12.clone() + a21.clone()).pow(2);
        assert_eq!(sq.to_string(), "a12^2 + 2*a12*a21 + a21^2");
        assert!((a12 * SymCoeff::zero()).is_zero());
    }

    #[test]
    fn mismatch() {
        let a = ring().var("a12").unwrap();
        let b = SymRing::new(["a12", "q"]).unwrap().var("q").unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn substitute_and_eval() {
        let r = ring();
        let b = r.var("b").unwrap();
        let z0 = r.var("z0").unwrap();
        let p = b.clone() * b.clone() - z0.clone() + SymCoeff::from_i64(3);
        let q = p.substitute("b", &(z0.clone() + SymCoeff::one())).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert("z0".to_string(), rat(1, 2));
        // (3/2)^2 - 1/2 + 3
        assert_eq!(q.eval(&vals).unwrap(), rat(19, 4));
    }

    #[test]
    fn linear_solve() {
        let r = ring();
        let b = r.var("b").unwrap();
        let z0 = r.var("z0").unwrap();
        let p = SymCoeff::from_i64(2) * b - z0.clone();
        let s = p.solve_linear("b").unwrap();
        assert_eq!(s, z0.scale(&rat(1, 2)));
    }

    #[test]
    fn pseudo_remainder() {
        let r = SymRing::new(["k", "z0", "z1"]).unwrap();
        let k = r.var("k").unwrap();
        let z0 = r.var("z0").unwrap();
        let z1 = r.var("z1").unwrap();
        // k·(z1 − z0) − 1 divides itself
        let g = k.clone() * (z1.clone() - z0.clone()) - SymCoeff::one();
        assert!(g.pseudo_rem(&g, "z1").unwrap().is_zero());
        let h = g.clone() * (z1 + z0);
        assert!(h.pseudo_rem(&g, "z1").unwrap().is_zero());
        assert!(!k.pseudo_rem(&g, "z1").unwrap().is_zero());
    }
}
