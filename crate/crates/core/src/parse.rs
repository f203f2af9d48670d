//! Expression parser. Grammar, loosest first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] int | '^' '(' ['-'] int ')')?
//! atom  := number | 's' | 'sqrt' '(' int ')' | 'e' | x[i] | y[j]
//!        | '(' expr ')' | '[' expr ']' | '(' expr ';' expr ')'
//! ```
//!
//! `s` is the square root of the field's `d`. Brackets hold group words that
//! become group-algebra elements; `( v ; g )` is a representation point. A bare
//! `x` or `y` means index 1.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::catkit::{AssocAlgebras, AssocKind, Groups, RepKind, Representations, Semigroups, Variety, VarietyTag};
use crate::error::{Error, Result};
use crate::groupalg::{GroupAlgElem, RepVector};
use crate::ncpoly::{NcPoly, Orientation};
use crate::reps::{RepObject, RepPoint};
use crate::scalars::{is_square_free, Coeff, FieldAuto, QuadExt, Rational, Scalar};
use crate::words::{GroupWord, MonoidWord, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^()[];".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(syntax(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq)]
enum Ast {
    Num(BigInt),
    Sqrt(Option<i64>),
    One,
    X(u32),
    Y(u32),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
    Bracket(Box<Ast>),
    Pair(Box<Ast>, Box<Ast>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            Ok(Ast::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n: i64 = n.try_into().map_err(|_| syntax(pos, "exponent too large"))?;
                self.at += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(syntax(pos, "expected an integer")),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = if self.eat('(') {
            let e = self.int()?;
            self.expect(')')?;
            e
        } else {
            self.int()?
        };
        Ok(Ast::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Num(n) => Ok(Ast::Num(n)),
            Tok::Sym('(') => {
                let first = self.expr()?;
                if self.eat(';') {
                    let second = self.expr()?;
                    self.expect(')')?;
                    Ok(Ast::Pair(Box::new(first), Box::new(second)))
                } else {
                    self.expect(')')?;
                    Ok(first)
                }
            }
            Tok::Sym('[') => {
                let inner = self.expr()?;
                self.expect(']')?;
                Ok(Ast::Bracket(Box::new(inner)))
            }
            Tok::Sym(c) => Err(syntax(pos, format!("unexpected '{c}'"))),
            Tok::Ident(id) => match id.as_str() {
                "e" => Ok(Ast::One),
                "s" => Ok(Ast::Sqrt(None)),
                "sqrt" => {
                    self.expect('(')?;
                    let d = self.int()?;
                    self.expect(')')?;
                    Ok(Ast::Sqrt(Some(d)))
                }
                "x" => Ok(Ast::X(1)),
                "y" => Ok(Ast::Y(1)),
                _ => {
                    let (head, digits) = id.split_at(1);
                    let idx: Option<u32> = digits.parse().ok().filter(|_| digits.chars().all(|c| c.is_ascii_digit()));
                    match (head, idx) {
                        (_, Some(0)) => Err(Error::UnboundGenerator(id.clone())),
                        ("x", Some(i)) => Ok(Ast::X(i)),
                        ("y", Some(j)) => Ok(Ast::Y(j)),
                        _ => Err(syntax(pos, format!("unknown name '{id}'"))),
                    }
                }
            },
        }
    }
}

fn parse_ast(text: &str) -> Result<Ast> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let ast = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(ast)
}

/// How generators are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Semigroup,
    Group,
    Assoc,
    Rep,
}

#[derive(Clone, Debug, PartialEq)]
enum Value {
    Scalar(Scalar),
    Poly(NcPoly<Scalar>),
    Mono(MonoidWord),
    Word(GroupWord),
    Alg(GroupAlgElem<Scalar>),
    Vector(RepVector<Scalar>),
    Point(RepPoint<Scalar>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Poly(_) => "polynomial",
            Value::Mono(_) => "semigroup word",
            Value::Word(_) => "group word",
            Value::Alg(_) => "group-algebra element",
            Value::Vector(_) => "module element",
            Value::Point(_) => "representation point",
        }
    }

    fn to_alg(&self) -> Option<GroupAlgElem<Scalar>> {
        match self {
            Value::Scalar(c) => Some(GroupAlgElem::constant(c.clone())),
            Value::Word(w) => Some(GroupAlgElem::word(w.clone())),
            Value::Alg(a) => Some(a.clone()),
            _ => None,
        }
    }
}

struct Eval {
    mode: Mode,
    sqrt: Option<i64>,
}

fn wrong(what: &str) -> Error {
    Error::WrongVariety(what.to_string())
}

impl Eval {
    fn eval(&self, ast: &Ast) -> Result<Value> {
        use Value::*;
        Ok(match ast {
            Ast::Num(n) => Scalar(crate::scalars::Scalar::rational(Rational::from_integer(n.clone()))),
            Ast::Sqrt(given) => {
                let d = self.sqrt.ok_or_else(|| Error::InvalidField("s used over Q".into()))?;
                if given.is_some_and(|g| g != d) {
                    return Err(Error::DomainMismatch(format!("sqrt({}) in a field with d = {d}", given.unwrap())));
                }
                Scalar(QuadExt::sqrt(d)?)
            }
            Ast::One => match self.mode {
                Mode::Semigroup => Mono(MonoidWord::identity()),
                Mode::Group | Mode::Rep => Word(GroupWord::identity()),
                Mode::Assoc => Scalar(Coeff::one()),
            },
            Ast::X(i) => match self.mode {
                Mode::Semigroup => Mono(MonoidWord::generator(*i)),
                Mode::Group | Mode::Rep => Word(GroupWord::generator(*i)),
                Mode::Assoc => Poly(NcPoly::generator(*i)),
            },
            Ast::Y(j) => match self.mode {
                Mode::Rep => Vector(RepVector::basis(*j)),
                _ => return Err(wrong("module generators y_j only exist for representations")),
            },
            Ast::Bracket(inner) => match (self.mode, self.eval(inner)?) {
                (Mode::Rep, Word(w)) => Alg(GroupAlgElem::word(w)),
                (Mode::Rep, v) => return Err(wrong(&format!("[...] holds a group word, got a {}", v.kind()))),
                _ => return Err(wrong("[...] is group-algebra syntax")),
            },
            Ast::Pair(v, g) => {
                if self.mode != Mode::Rep {
                    return Err(wrong("( v ; g ) is representation syntax"));
                }
                let v = match self.eval(v)? {
                    Vector(v) => v,
                    Scalar(c) if c.is_zero() => RepVector::zero(),
                    other => return Err(wrong(&format!("module part is a {}", other.kind()))),
                };
                let g = match self.eval(g)? {
                    Word(g) => g,
                    Scalar(c) if c.is_one() => GroupWord::identity(),
                    other => return Err(wrong(&format!("group part is a {}", other.kind()))),
                };
                Point(RepPoint::new(v, g))
            }
            Ast::Neg(a) => self.neg(self.eval(a)?)?,
            Ast::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?)?,
            Ast::Sub(a, b) => {
                let nb = self.neg(self.eval(b)?)?;
                self.add(self.eval(a)?, nb)?
            }
            Ast::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?)?,
            Ast::Div(a, b) => match self.eval(b)? {
                Scalar(c) => {
                    let inv = c.inv().ok_or(Error::DivisionByZero)?;
                    self.mul(self.eval(a)?, Scalar(inv))?
                }
                other => return Err(wrong(&format!("cannot divide by a {}", other.kind()))),
            },
            Ast::Pow(a, e) => self.pow(self.eval(a)?, *e)?,
        })
    }

    fn neg(&self, v: Value) -> Result<Value> {
        use Value::*;
        Ok(match v {
            Scalar(c) => Scalar(-c),
            Poly(p) => Poly(-p),
            Alg(a) => Alg(-a),
            Word(w) => Alg(-GroupAlgElem::word(w)),
            Vector(v) => Vector(-v),
            other => return Err(wrong(&format!("cannot negate a {}", other.kind()))),
        })
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        use Value::*;
        Ok(match (a, b) {
            (Scalar(x), Scalar(y)) => Scalar(x + y),
            (Poly(p), Poly(q)) => Poly(p + q),
            (Poly(p), Scalar(c)) | (Scalar(c), Poly(p)) => Poly(p + NcPoly::constant(c)),
            (Vector(v), Vector(w)) => Vector(v + w),
            (Vector(v), Scalar(c)) | (Scalar(c), Vector(v)) if c.is_zero() => Vector(v),
            (a, b) => match (a.to_alg(), b.to_alg()) {
                (Some(x), Some(y)) if self.mode == Mode::Rep => Alg(x + y),
                _ => return Err(wrong(&format!("cannot add a {} and a {}", a.kind(), b.kind()))),
            },
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        use Value::*;
        Ok(match (a, b) {
            (Scalar(x), Scalar(y)) => Scalar(x * y),
            (Poly(p), Poly(q)) => Poly(&p * &q),
            (Poly(p), Scalar(c)) | (Scalar(c), Poly(p)) => Poly(p.scalar_mul(&c)),
            (Mono(u), Mono(v)) => Mono(u.concat(&v)),
            (Word(u), Word(v)) => Word(u.concat(&v)),
            (Vector(v), Scalar(c)) | (Scalar(c), Vector(v)) => Vector(v.scalar_mul(&c)),
            (Vector(v), other) => match other.to_alg() {
                Some(p) => Vector(v.mul_right(&p)),
                None => return Err(wrong(&format!("cannot act on a module element by a {}", other.kind()))),
            },
            (a, b) => match (a.to_alg(), b.to_alg()) {
                (Some(x), Some(y)) if self.mode == Mode::Rep => Alg(x * y),
                _ => return Err(wrong(&format!("cannot multiply a {} by a {}", a.kind(), b.kind()))),
            },
        })
    }

    fn pow(&self, a: Value, e: i64) -> Result<Value> {
        use Value::*;
        Ok(match a {
            Word(w) => Word(w.pow(e)),
            Scalar(c) => {
                let base = if e < 0 { c.inv().ok_or(Error::DivisionByZero)? } else { c };
                let mut acc = crate::scalars::Scalar::one();
                for _ in 0..e.unsigned_abs() {
                    acc = acc * base.clone();
                }
                Scalar(acc)
            }
            Mono(w) if e >= 1 => Mono(w.pow(e as u32)),
            Poly(p) if e >= 0 => Poly(p.pow(e as u32)),
            Alg(p) => {
                let base = if e < 0 {
                    p.unit_inverse().ok_or_else(|| Error::NotInvertible(p.to_string()))?
                } else {
                    p
                };
                Alg(base.pow(e.unsigned_abs() as u32))
            }
            other => return Err(wrong(&format!("cannot raise a {} to the power {e}", other.kind()))),
        })
    }
}

fn eval(text: &str, mode: Mode, sqrt: Option<i64>) -> Result<Value> {
    if let Some(d) = sqrt {
        if !is_square_free(d) {
            return Err(Error::InvalidField(format!("{d} is not square-free")));
        }
    }
    Eval { mode, sqrt }.eval(&parse_ast(text)?)
}

pub fn parse_scalar(text: &str, sqrt: Option<i64>) -> Result<Scalar> {
    match eval(text, Mode::Assoc, sqrt)? {
        Value::Scalar(c) => Ok(c),
        Value::Poly(p) => p.as_constant().ok_or_else(|| wrong("expected a scalar")),
        v => Err(wrong(&format!("expected a scalar, got a {}", v.kind()))),
    }
}

pub fn parse_poly(text: &str, sqrt: Option<i64>) -> Result<NcPoly<Scalar>> {
    match eval(text, Mode::Assoc, sqrt)? {
        Value::Poly(p) => Ok(p),
        Value::Scalar(c) => Ok(NcPoly::constant(c)),
        v => Err(wrong(&format!("expected a polynomial, got a {}", v.kind()))),
    }
}

pub fn parse_monoid_word(text: &str) -> Result<MonoidWord> {
    match eval(text, Mode::Semigroup, None)? {
        Value::Mono(w) => Ok(w),
        v => Err(wrong(&format!("expected a semigroup word, got a {}", v.kind()))),
    }
}

pub fn parse_group_word(text: &str) -> Result<GroupWord> {
    match eval(text, Mode::Group, None)? {
        Value::Word(w) => Ok(w),
        Value::Scalar(c) if c.is_one() => Ok(GroupWord::identity()),
        v => Err(wrong(&format!("expected a group word, got a {}", v.kind()))),
    }
}

pub fn parse_group_alg(text: &str, sqrt: Option<i64>) -> Result<GroupAlgElem<Scalar>> {
    let v = eval(text, Mode::Rep, sqrt)?;
    v.to_alg()
        .ok_or_else(|| wrong(&format!("expected a group-algebra element, got a {}", v.kind())))
}

pub fn parse_rep_vector(text: &str, sqrt: Option<i64>) -> Result<RepVector<Scalar>> {
    match eval(text, Mode::Rep, sqrt)? {
        Value::Vector(v) => Ok(v),
        Value::Scalar(c) if c.is_zero() => Ok(RepVector::zero()),
        v => Err(wrong(&format!("expected a module element, got a {}", v.kind()))),
    }
}

pub fn parse_rep_point(text: &str, sqrt: Option<i64>) -> Result<RepPoint<Scalar>> {
    match eval(text, Mode::Rep, sqrt)? {
        Value::Point(p) => Ok(p),
        Value::Vector(v) => Ok(RepPoint::new(v, GroupWord::identity())),
        Value::Word(g) => Ok(RepPoint::new(RepVector::zero(), g)),
        v => Err(wrong(&format!("expected a representation point, got a {}", v.kind()))),
    }
}

/// Any parsed element, tagged by carrier.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Word(MonoidWord),
    GroupWord(GroupWord),
    Poly(NcPoly<Scalar>),
    GroupAlg(GroupAlgElem<Scalar>),
    Point(RepPoint<Scalar>),
}

impl Element {
    pub fn kind(&self) -> &'static str {
        match self {
            Element::Word(_) => "semigroup_word",
            Element::GroupWord(_) => "group_word",
            Element::Poly(_) => "polynomial",
            Element::GroupAlg(_) => "group_algebra",
            Element::Point(_) => "rep_point",
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Word(w) => w.fmt(f),
            Element::GroupWord(w) => w.fmt(f),
            Element::Poly(p) => p.fmt(f),
            Element::GroupAlg(a) => a.fmt(f),
            Element::Point(p) => p.fmt(f),
        }
    }
}

/// Parses in the carrier of `variety`. For representations, a bracketed or
/// scalar expression without module generators is a group-algebra element.
pub fn parse_expr(text: &str, variety: VarietyTag, sqrt: Option<i64>) -> Result<Element> {
    Ok(match variety {
        VarietyTag::Semigroup => Element::Word(parse_monoid_word(text)?),
        VarietyTag::Group => Element::GroupWord(parse_group_word(text)?),
        VarietyTag::AssocAlgebra => Element::Poly(parse_poly(text, sqrt)?),
        VarietyTag::Representation => match eval(text, Mode::Rep, sqrt)? {
            Value::Point(p) => Element::Point(p),
            Value::Vector(v) => Element::Point(RepPoint::new(v, GroupWord::identity())),
            v => Element::GroupAlg(
                v.to_alg()
                    .ok_or_else(|| wrong(&format!("unexpected {}", v.kind())))?,
            ),
        },
    })
}

/// Parsing of objects and elements per variety.
pub trait ParseVariety: Variety {
    fn parse_object(text: &str) -> Result<Self::Obj>;
    fn parse_elem(text: &str, sqrt: Option<i64>) -> Result<Self::Elem>;

    /// The kind of a presentation with this orientation and field automorphism.
    fn kind_from(orientation: Orientation, phi: FieldAuto) -> Result<Self::Kind>;

    /// Generator images keyed by generator name (`x1`, `y2`, ...). Missing
    /// generators map to themselves.
    fn parse_images(obj: &Self::Obj, named: &BTreeMap<String, String>, sqrt: Option<i64>) -> Result<Vec<Self::Elem>>;
}

fn check_names(named: &BTreeMap<String, String>, known: &[String]) -> Result<()> {
    match named.keys().find(|k| !known.contains(k)) {
        Some(k) => Err(Error::UnboundGenerator(k.clone())),
        None => Ok(()),
    }
}

fn rank_images<E>(
    n: u32,
    named: &BTreeMap<String, String>,
    gen: impl Fn(u32) -> E,
    parse: impl Fn(&str) -> Result<E>,
) -> Result<Vec<E>> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    check_names(named, &names)?;
    names
        .iter()
        .zip(1..)
        .map(|(name, i)| named.get(name).map_or_else(|| Ok(gen(i)), |t| parse(t)))
        .collect()
}

fn no_twist(v: &str, phi: FieldAuto) -> Result<()> {
    if phi.is_identity() {
        Ok(())
    } else {
        Err(wrong(&format!("{v} have no scalars to twist")))
    }
}

fn parse_rank(text: &str) -> Result<u32> {
    let t = text.trim();
    let digits = t.strip_prefix('F').unwrap_or(t);
    match digits.parse::<u32>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(syntax(0, format!("object signature '{text}' is not a positive generator count"))),
    }
}

impl ParseVariety for Semigroups {
    fn parse_object(text: &str) -> Result<u32> {
        parse_rank(text)
    }
    fn parse_elem(text: &str, _sqrt: Option<i64>) -> Result<MonoidWord> {
        parse_monoid_word(text)
    }
    fn kind_from(orientation: Orientation, phi: FieldAuto) -> Result<Orientation> {
        no_twist("semigroups", phi)?;
        Ok(orientation)
    }
    fn parse_images(obj: &u32, named: &BTreeMap<String, String>, _sqrt: Option<i64>) -> Result<Vec<MonoidWord>> {
        rank_images(*obj, named, MonoidWord::generator, parse_monoid_word)
    }
}

impl ParseVariety for Groups {
    fn parse_object(text: &str) -> Result<u32> {
        parse_rank(text)
    }
    fn parse_elem(text: &str, _sqrt: Option<i64>) -> Result<GroupWord> {
        parse_group_word(text)
    }
    fn kind_from(orientation: Orientation, phi: FieldAuto) -> Result<Orientation> {
        no_twist("groups", phi)?;
        Ok(orientation)
    }
    fn parse_images(obj: &u32, named: &BTreeMap<String, String>, _sqrt: Option<i64>) -> Result<Vec<GroupWord>> {
        rank_images(*obj, named, GroupWord::generator, parse_group_word)
    }
}

impl ParseVariety for AssocAlgebras {
    fn parse_object(text: &str) -> Result<u32> {
        parse_rank(text)
    }
    fn parse_elem(text: &str, sqrt: Option<i64>) -> Result<NcPoly<Scalar>> {
        parse_poly(text, sqrt)
    }
    fn kind_from(orientation: Orientation, phi: FieldAuto) -> Result<AssocKind> {
        Ok(AssocKind::new(orientation, phi))
    }
    fn parse_images(obj: &u32, named: &BTreeMap<String, String>, sqrt: Option<i64>) -> Result<Vec<NcPoly<Scalar>>> {
        rank_images(*obj, named, NcPoly::generator, |t| parse_poly(t, sqrt))
    }
}

impl ParseVariety for Representations {
    /// `(y,x)`: module rank and group rank.
    fn parse_object(text: &str) -> Result<RepObject> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| syntax(0, format!("expected '(y,x)', got '{text}'")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [y, x] => {
                let y = y.parse().map_err(|_| syntax(1, format!("bad module rank in '{text}'")))?;
                let x = x.parse().map_err(|_| syntax(1, format!("bad group rank in '{text}'")))?;
                Ok(RepObject::new(y, x))
            }
            _ => Err(syntax(0, format!("expected '(y,x)', got '{text}'"))),
        }
    }
    fn parse_elem(text: &str, sqrt: Option<i64>) -> Result<RepPoint<Scalar>> {
        parse_rep_point(text, sqrt)
    }
    /// "mirror" means Δ.
    fn kind_from(orientation: Orientation, phi: FieldAuto) -> Result<RepKind> {
        Ok(RepKind::new(orientation.is_dual(), phi))
    }
    fn parse_images(
        obj: &RepObject,
        named: &BTreeMap<String, String>,
        sqrt: Option<i64>,
    ) -> Result<Vec<RepPoint<Scalar>>> {
        let ys: Vec<String> = (1..=obj.y).map(|j| format!("y{j}")).collect();
        let xs: Vec<String> = (1..=obj.x).map(|i| format!("x{i}")).collect();
        check_names(named, &[ys.clone(), xs.clone()].concat())?;
        let mut out = Vec::new();
        for (name, j) in ys.iter().zip(1..) {
            let v = match named.get(name) {
                Some(t) => parse_rep_vector(t, sqrt)?,
                None => RepVector::basis(j),
            };
            out.push(RepPoint::new(v, GroupWord::identity()));
        }
        for (name, i) in xs.iter().zip(1..) {
            let g = match named.get(name) {
                Some(t) => parse_group_word(t)?,
                None => GroupWord::generator(i),
            };
            out.push(RepPoint::new(RepVector::zero(), g));
        }
        Ok(out)
    }
}

/// `"Q"` or `"Q(sqrt D)"` (also `Q(sqrt(D))`, `Q(sqrtD)`) to the optional `d`.
pub fn parse_field(text: &str) -> Result<Option<i64>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" || t.is_empty() {
        return Ok(None);
    }
    let body = t
        .strip_prefix("Q(sqrt")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidField(text.to_string()))?;
    let body = body.trim_start_matches('(').trim_end_matches(')');
    let d: i64 = body.parse().map_err(|_| Error::InvalidField(text.to_string()))?;
    if !is_square_free(d) || d == 1 {
        return Err(Error::InvalidField(format!("{d} is not a square-free integer other than 1")));
    }
    Ok(Some(d))
}

pub fn field_name(sqrt: Option<i64>) -> String {
    match sqrt {
        None => "Q".into(),
        Some(d) => format!("Q(sqrt {d})"),
    }
}
