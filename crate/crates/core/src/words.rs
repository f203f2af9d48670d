//! Words in free monoids and free groups over indexed generators `x1, x2, …`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Operations shared by monoid and group words.
pub trait Word: Clone + Eq + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn identity() -> Self;
    fn concat(&self, other: &Self) -> Self;
    fn reverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    fn len(&self) -> usize;
    /// Largest generator index occurring, 0 for the empty word.
    fn max_generator(&self) -> u32;
    fn generator(i: u32) -> Self;
    /// The homomorphic image under `x_i ↦ images[i]`.
    fn substitute(&self, images: &BTreeMap<u32, Self>) -> Result<Self>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn unbound(i: u32) -> Error {
    Error::UnboundGenerator(format!("x{i}"))
}

/// Compares by length (longer first), then lexicographically.
fn deglex<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

/// A word in the free monoid; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MonoidWord(Vec<u32>);

impl MonoidWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::UnboundGenerator("x0".into()));
        }
        Ok(MonoidWord(letters))
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn pow(&self, n: u32) -> Self {
        MonoidWord(self.0.repeat(n as usize))
    }
}

impl Ord for MonoidWord {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex(&self.0, &other.0)
    }
}

impl PartialOrd for MonoidWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word for MonoidWord {
    fn identity() -> Self {
        MonoidWord(Vec::new())
    }

    fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MonoidWord(v)
    }

    fn reverse(&self) -> Self {
        MonoidWord(self.0.iter().rev().copied().collect())
    }

    fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn max_generator(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    fn generator(i: u32) -> Self {
        assert!(i >= 1, "generator indices start at 1");
        MonoidWord(vec![i])
    }

    fn substitute(&self, images: &BTreeMap<u32, Self>) -> Result<Self> {
        let mut out = Vec::new();
        for &i in &self.0 {
            out.extend_from_slice(&images.get(&i).ok_or_else(|| unbound(i))?.0);
        }
        Ok(MonoidWord(out))
    }
}

/// Writes runs of equal letters as powers: `x1^2*x2`.
fn fmt_runs(runs: &[(u32, i64)], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (k, &(g, e)) in runs.iter().enumerate() {
        if k > 0 {
            f.write_str("*")?;
        }
        write!(f, "x{g}")?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let mut runs: Vec<(u32, i64)> = Vec::new();
        for &g in &self.0 {
            match runs.last_mut() {
                Some((h, e)) if *h == g => *e += 1,
                _ => runs.push((g, 1)),
            }
        }
        fmt_runs(&runs, f)
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word in the free group.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.gen == 0 {
                return Err(Error::UnboundGenerator("x0".into()));
            }
            push_reduced(&mut out, l);
        }
        Ok(GroupWord(out))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn invert(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `x_i^n`.
    pub fn gen_pow(i: u32, n: i64) -> Self {
        assert!(i >= 1, "generator indices start at 1");
        let l = Letter::new(i, n < 0);
        GroupWord(vec![l; n.unsigned_abs() as usize])
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    /// The exponent `n` when the word is `x_i^n` for the given `i` (or empty).
    pub fn as_power_of(&self, i: u32) -> Option<i64> {
        let mut n = 0i64;
        for l in &self.0 {
            if l.gen != i {
                return None;
            }
            n += if l.inverse { -1 } else { 1 };
        }
        Some(n)
    }

    fn runs(&self) -> Vec<(u32, i64)> {
        let mut runs: Vec<(u32, i64)> = Vec::new();
        for l in &self.0 {
            let s = if l.inverse { -1 } else { 1 };
            match runs.last_mut() {
                Some((h, e)) if *h == l.gen && (*e < 0) == l.inverse => *e += s,
                _ => runs.push((l.gen, s)),
            }
        }
        runs
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match out.last() {
        Some(&last) if last.cancels(l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex(&self.0, &other.0)
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word for GroupWord {
    fn identity() -> Self {
        GroupWord(Vec::new())
    }

    fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut v, l);
        }
        GroupWord(v)
    }

    fn reverse(&self) -> Self {
        GroupWord(self.0.iter().rev().copied().collect())
    }

    fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    fn generator(i: u32) -> Self {
        GroupWord::gen_pow(i, 1)
    }

    fn substitute(&self, images: &BTreeMap<u32, Self>) -> Result<Self> {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = images.get(&l.gen).ok_or_else(|| unbound(l.gen))?;
            if l.inverse {
                for m in img.0.iter().rev() {
                    push_reduced(&mut out, m.inv());
                }
            } else {
                for &m in &img.0 {
                    push_reduced(&mut out, m);
                }
            }
        }
        Ok(GroupWord(out))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        fmt_runs(&self.runs(), f)
    }
}

/// The image map `x_{i+1} ↦ images[i]`.
pub fn word_map<W: Word>(images: &[W]) -> BTreeMap<u32, W> {
    images
        .iter()
        .enumerate()
        .map(|(i, w)| (i as u32 + 1, w.clone()))
        .collect()
}

/// Images of `f ∘ g` for endomorphisms given by their images.
pub fn compose_word_images<W: Word>(f: &[W], g: &[W]) -> Result<Vec<W>> {
    let fm = word_map(f);
    g.iter().map(|w| w.substitute(&fm)).collect()
}

pub fn is_identity_word_images<W: Word>(f: &[W]) -> bool {
    f.iter()
        .enumerate()
        .all(|(i, w)| *w == W::generator(i as u32 + 1))
}

/// Inverse of a signed permutation `x_i ↦ x_{π(i)}^{±1}`, `None` otherwise.
fn signed_permutation_inverse(f: &[GroupWord]) -> Option<Vec<GroupWord>> {
    let n = f.len();
    let mut inv = vec![GroupWord::identity(); n];
    for (i, w) in f.iter().enumerate() {
        let [l] = w.letters() else { return None };
        let slot = inv.get_mut(l.gen as usize - 1)?;
        if !slot.is_identity() {
            return None;
        }
        *slot = GroupWord::gen_pow(i as u32 + 1, if l.inverse { -1 } else { 1 });
    }
    Some(inv)
}

type HalfKey = (usize, Vec<(u32, bool)>, Vec<(u32, bool)>);

/// Nielsen's well-order on words: length first, then the initial halves of `w`
/// and `w⁻¹`. A set that is not Nielsen-reduced always has an elementary
/// move that strictly lowers one element in this order.
fn half_key(w: &GroupWord) -> HalfKey {
    let half = |v: &GroupWord| -> Vec<(u32, bool)> {
        v.letters()[..v.len().div_ceil(2)]
            .iter()
            .map(|l| (l.gen, l.inverse))
            .collect()
    };
    let (a, b) = (half(w), half(&w.invert()));
    if a <= b {
        (w.len(), a, b)
    } else {
        (w.len(), b, a)
    }
}

/// Inverse of the endomorphism `x_i ↦ images[i]` of the free group of rank
/// `images.len()`, by Nielsen reduction.
///
/// Reduction ends in a signed permutation exactly when the images form a
/// basis, so failure to reach one is a proof of non-invertibility.
pub fn nielsen_inverse(images: &[GroupWord]) -> Result<Vec<GroupWord>> {
    let n = images.len();
    if let Some(w) = images.iter().find(|w| w.max_generator() as usize > n) {
        return Err(Error::DomainMismatch(format!("{w} leaves the group of rank {n}")));
    }
    if images.iter().any(|w| w.is_identity()) {
        return Err(Error::NotInvertible("a generator maps to e".into()));
    }
    let mut f = images.to_vec();
    let mut e: Vec<GroupWord> = (1..=n as u32).map(GroupWord::generator).collect();
    while f.iter().any(|w| w.len() > 1) {
        // the move x_i ↦ x_i x_j^±1 or x_j^±1 x_i that lowers x_i the most
        let mut best: Option<(HalfKey, usize, usize, bool, bool)> = None;
        for i in 0..n {
            let current = half_key(&f[i]);
            for j in (0..n).filter(|&j| j != i) {
                for inverse in [false, true] {
                    let fj = if inverse { f[j].invert() } else { f[j].clone() };
                    for left in [false, true] {
                        let cand = if left { fj.concat(&f[i]) } else { f[i].concat(&fj) };
                        if cand.is_identity() {
                            return Err(Error::NotInvertible("images are dependent".into()));
                        }
                        let key = half_key(&cand);
                        if key < current && best.as_ref().is_none_or(|b| key < b.0) {
                            best = Some((key, i, j, inverse, left));
                        }
                    }
                }
            }
        }
        let Some((_, i, j, inverse, left)) = best else {
            return Err(Error::NotInvertible("images are Nielsen-reduced but not a basis".into()));
        };
        let step = |v: &mut Vec<GroupWord>| {
            let vj = if inverse { v[j].invert() } else { v[j].clone() };
            v[i] = if left { vj.concat(&v[i]) } else { v[i].concat(&vj) };
        };
        step(&mut f);
        step(&mut e);
    }
    let a_inv = signed_permutation_inverse(&f)
        .ok_or_else(|| Error::NotInvertible("reduced images are not a basis".into()))?;
    let inv = compose_word_images(&e, &a_inv)?;
    if !is_identity_word_images(&compose_word_images(images, &inv)?) {
        return Err(Error::NotInvertible("candidate inverse failed verification".into()));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gw(spec: &[(u32, bool)]) -> GroupWord {
        GroupWord::from_letters(spec.iter().map(|&(g, i)| Letter::new(g, i))).unwrap()
    }

    fn mw(v: &[u32]) -> MonoidWord {
        MonoidWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn concat_examples() {
        let a = gw(&[(1, false), (2, false)]);
        let b = gw(&[(2, true), (1, true)]);
        assert!(a.concat(&b).is_identity());
        assert_eq!(mw(&[1, 1]).concat(&mw(&[2])), mw(&[1, 1, 2]));
        assert_eq!(GroupWord::identity().concat(&a), a);
    }

    #[test]
    fn invert_and_reverse_examples() {
        let w = gw(&[(1, false), (2, true)]);
        assert_eq!(w.invert(), gw(&[(2, false), (1, true)]));
        assert!(GroupWord::identity().invert().is_identity());
        assert_eq!(mw(&[1, 1, 2]).reverse(), mw(&[2, 1, 1]));
        let p = gw(&[(1, false), (2, true), (1, false)]);
        assert_eq!(p.reverse(), p);
    }

    #[test]
    fn substitute_examples() {
        let mut images = BTreeMap::new();
        images.insert(1, mw(&[2]));
        images.insert(2, mw(&[1, 1]));
        assert_eq!(mw(&[1, 2]).substitute(&images).unwrap(), mw(&[2, 1, 1]));
        let w = GroupWord::from_letters([Letter::new(1, false), Letter::new(1, true)]).unwrap();
        assert!(w.substitute(&BTreeMap::new()).unwrap().is_identity());
        let missing = mw(&[3]).substitute(&images);
        assert_eq!(missing, Err(Error::UnboundGenerator("x3".into())));
    }

    #[test]
    fn display_runs() {
        assert_eq!(gw(&[(1, false), (2, true), (1, false)]).to_string(), "x1*x2^-1*x1");
        assert_eq!(GroupWord::gen_pow(1, -2).to_string(), "x1^-2");
        assert_eq!(mw(&[1, 1, 2]).to_string(), "x1^2*x2");
        assert_eq!(GroupWord::identity().to_string(), "e");
    }

    #[test]
    fn power_detection() {
        assert_eq!(GroupWord::gen_pow(1, -3).as_power_of(1), Some(-3));
        assert_eq!(GroupWord::identity().as_power_of(1), Some(0));
        assert_eq!(gw(&[(2, false)]).as_power_of(1), None);
    }

    fn letters(max_gen: u32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(
            (1..=max_gen, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)),
            0..max_len,
        )
    }

    fn group_word() -> impl Strategy<Value = GroupWord> {
        letters(3, 8).prop_map(|l| GroupWord::from_letters(l).unwrap())
    }

    fn monoid_word() -> impl Strategy<Value = MonoidWord> {
        prop::collection::vec(1u32..=3, 0..6).prop_map(|v| MonoidWord::new(v).unwrap())
    }

    fn is_reduced(w: &[Letter]) -> bool {
        w.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(raw in letters(2, 12), picks in prop::collection::vec(any::<usize>(), 12)) {
            // cancel adjacent pairs in an arbitrary order
            let mut w = raw.clone();
            let mut k = 0;
            loop {
                let spots: Vec<usize> = (0..w.len().saturating_sub(1))
                    .filter(|&i| w[i].cancels(w[i + 1]))
                    .collect();
                if spots.is_empty() {
                    break;
                }
                let i = spots[picks[k % picks.len()] % spots.len()];
                w.drain(i..i + 2);
                k += 1;
            }
            prop_assert!(is_reduced(&w));
            let reduced = GroupWord::from_letters(raw).unwrap();
            prop_assert_eq!(reduced.letters(), &w[..]);
        }

        #[test]
        fn reverse_is_anti(u in group_word(), v in group_word()) {
            prop_assert_eq!(u.concat(&v).reverse(), v.reverse().concat(&u.reverse()));
            prop_assert_eq!(u.reverse().reverse(), u.clone());
            prop_assert_eq!(u.invert().reverse(), u.reverse().invert());
        }

        #[test]
        fn invert_is_anti(u in group_word(), v in group_word()) {
            prop_assert_eq!(u.concat(&v).invert(), v.invert().concat(&u.invert()));
            prop_assert!(u.concat(&u.invert()).is_identity());
            prop_assert_eq!(u.invert().invert(), u);
        }

        #[test]
        fn monoid_reverse_is_anti(u in monoid_word(), v in monoid_word()) {
            prop_assert_eq!(u.concat(&v).reverse(), v.reverse().concat(&u.reverse()));
        }

        #[test]
        fn substitution_is_homomorphic(u in group_word(), v in group_word(),
                                       i1 in group_word(), i2 in group_word(), i3 in group_word()) {
            let images: BTreeMap<u32, GroupWord> = [(1, i1), (2, i2), (3, i3)].into_iter().collect();
            let whole = u.concat(&v).substitute(&images).unwrap();
            let parts = u.substitute(&images).unwrap().concat(&v.substitute(&images).unwrap());
            prop_assert_eq!(&whole, &parts);
            // inversion commutes with every homomorphism
            prop_assert_eq!(u.invert().substitute(&images).unwrap(), u.substitute(&images).unwrap().invert());
        }

        #[test]
        fn monoid_substitution_is_homomorphic(u in monoid_word(), v in monoid_word(),
                                              i1 in monoid_word(), i2 in monoid_word(), i3 in monoid_word()) {
            let images: BTreeMap<u32, MonoidWord> = [(1, i1), (2, i2), (3, i3)].into_iter().collect();
            prop_assert_eq!(
                u.concat(&v).substitute(&images).unwrap(),
                u.substitute(&images).unwrap().concat(&v.substitute(&images).unwrap())
            );
        }
    }

    #[test]
    fn nielsen_examples() {
        let x1 = GroupWord::generator(1);
        let x2 = GroupWord::generator(2);
        let f = vec![x1.concat(&x2), x2.clone()];
        let g = nielsen_inverse(&f).unwrap();
        assert_eq!(g, vec![x1.concat(&x2.invert()), x2.clone()]);
        assert!(nielsen_inverse(&[x1.clone(), GroupWord::identity()]).is_err());
        assert!(nielsen_inverse(&[x1.pow(2), x2.clone()]).is_err());
        // A conjugate that no single product shortens.
        let x3 = GroupWord::generator(3);
        let w = x1.concat(&x2.invert());
        let f = vec![w.concat(&x3.invert()).concat(&w.invert()), w.concat(&x3).concat(&x2).concat(&x3), w.concat(&x3)];
        let g = nielsen_inverse(&f).unwrap();
        assert!(is_identity_word_images(&compose_word_images(&f, &g).unwrap()));
        let swap = vec![x2.invert(), x1.clone()];
        let g = nielsen_inverse(&swap).unwrap();
        assert!(is_identity_word_images(&compose_word_images(&swap, &g).unwrap()));
    }

    proptest! {
        #[test]
        fn nielsen_inverts_products(moves in prop::collection::vec((0usize..3, 0usize..3, any::<bool>(), any::<bool>()), 0..16)) {
            let mut f: Vec<GroupWord> = (1..=3).map(GroupWord::generator).collect();
            for (i, j, inv, left) in moves {
                if i == j { continue; }
                let fj = if inv { f[j].invert() } else { f[j].clone() };
                f[i] = if left { fj.concat(&f[i]) } else { f[i].concat(&fj) };
            }
            let g = nielsen_inverse(&f).unwrap();
            prop_assert!(is_identity_word_images(&compose_word_images(&f, &g).unwrap()));
            prop_assert!(is_identity_word_images(&compose_word_images(&g, &f).unwrap()));
        }
    }
}
