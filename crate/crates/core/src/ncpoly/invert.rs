//! Inverting endomorphisms of K⟨x1..xn⟩ given by generator images.

use std::collections::BTreeMap;

use super::NcPoly;
use crate::error::{Error, Result};
use crate::scalars::{matrix_inverse, matrix_rank, Coeff};
use crate::words::{MonoidWord, Word};

const MAX_STEPS: usize = 200;
const MAX_CANDIDATES: usize = 20_000;

/// The image map `x_{i+1} ↦ images[i]`.
pub fn image_map<C: Coeff>(images: &[NcPoly<C>]) -> BTreeMap<u32, NcPoly<C>> {
    images
        .iter()
        .enumerate()
        .map(|(i, p)| (i as u32 + 1, p.clone()))
        .collect()
}

/// Images of `f ∘ g` for endomorphisms given by their images.
pub fn compose_images<C: Coeff>(f: &[NcPoly<C>], g: &[NcPoly<C>]) -> Result<Vec<NcPoly<C>>> {
    let fm = image_map(f);
    g.iter().map(|p| p.substitute(&fm)).collect()
}

pub fn is_identity_images<C: Coeff>(f: &[NcPoly<C>]) -> bool {
    f.iter()
        .enumerate()
        .all(|(i, p)| *p == NcPoly::generator(i as u32 + 1))
}

/// Coefficient matrix of the degree-one part: `m[i][j]` is the coefficient of
/// `x_{j+1}` in `images[i]`.
pub fn linear_part<C: Coeff>(images: &[NcPoly<C>]) -> Vec<Vec<C>> {
    let n = images.len() as u32;
    images
        .iter()
        .map(|p| (1..=n).map(|j| p.coeff(&MonoidWord::generator(j))).collect())
        .collect()
}

fn top_measure<C: Coeff>(p: &NcPoly<C>) -> (usize, usize) {
    let d = p.degree();
    (d, p.terms().filter(|(w, _)| w.len() == d).count())
}

/// Words over `allowed` whose image degrees add up to `target`.
fn degree_words(allowed: &[(u32, usize)], target: usize, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if out.len() >= MAX_CANDIDATES {
        return;
    }
    if target == 0 {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        return;
    }
    for &(j, d) in allowed {
        if d <= target {
            cur.push(j);
            degree_words(allowed, target - d, out, cur);
            cur.pop();
        }
    }
}

fn product<C: Coeff>(images: &BTreeMap<u32, NcPoly<C>>, word: &[u32]) -> NcPoly<C> {
    word.iter()
        .fold(NcPoly::one(), |acc, j| &acc * &images[j])
}

/// Finds `c·Π f_j` (j ≠ i) lowering the top of `f_i`.
fn find_reduction<C: Coeff>(f: &[NcPoly<C>], i: usize) -> Option<(C, Vec<u32>)> {
    let target = &f[i];
    let (deg, _) = top_measure(target);
    if deg < 2 {
        return None;
    }
    let (lead_w, lead_c) = target.terms().next()?;
    let allowed: Vec<(u32, usize)> = f
        .iter()
        .enumerate()
        .filter(|&(j, p)| j != i && p.degree() >= 1)
        .map(|(j, p)| (j as u32 + 1, p.degree()))
        .collect();
    let mut words = Vec::new();
    degree_words(&allowed, deg, &mut words, &mut Vec::new());
    let map = image_map(f);
    let before = top_measure(target);
    for w in words {
        let u = product(&map, &w);
        let cu = u.coeff(lead_w);
        let Some(inv) = cu.inv() else { continue };
        let c = lead_c.clone() * inv;
        let reduced = target.clone() - u.scalar_mul(&c);
        if top_measure(&reduced) < before {
            return Some((c, w));
        }
    }
    None
}

/// The inverse of the endomorphism `x_i ↦ images[i]` of K⟨x1..xn⟩, n = `images.len()`.
///
/// A singular linear part proves non-invertibility. Otherwise the images are
/// reduced by elementary substitutions until they are affine; a stalled
/// reduction is reported as `NotInvertible` too, though it is not a proof.
pub fn invert_endomorphism<C: Coeff>(images: &[NcPoly<C>]) -> Result<Vec<NcPoly<C>>> {
    let n = images.len();
    if let Some(p) = images.iter().find(|p| p.max_generator() as usize > n) {
        return Err(Error::DomainMismatch(format!("{p} leaves the object with {n} generators")));
    }
    let lin = linear_part(images);
    let rank = matrix_rank(&lin);
    if rank < n {
        return Err(Error::NotInvertible(format!(
            "linear part has rank {rank} < {n}"
        )));
    }
    // normalise: f ∘ l has identity linear part and no constants
    let linv = matrix_inverse(&lin).expect("full rank");
    let consts: Vec<C> = images.iter().map(|p| p.constant_term()).collect();
    let l: Vec<NcPoly<C>> = (0..n)
        .map(|i| {
            (0..n).fold(NcPoly::zero(), |acc, j| {
                let shifted = NcPoly::generator(j as u32 + 1) - NcPoly::constant(consts[j].clone());
                acc + shifted.scalar_mul(&linv[i][j])
            })
        })
        .collect();
    let mut f = compose_images(images, &l)?;
    let mut e = l;

    let mut steps = 0;
    while f.iter().any(|p| p.degree() > 1) {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::NotInvertible("reduction did not terminate".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(top_measure(&f[i])));
        let Some((i, c, w)) = order
            .into_iter()
            .find_map(|i| find_reduction(&f, i).map(|(c, w)| (i, c, w)))
        else {
            return Err(Error::NotInvertible("degree reduction stalled".into()));
        };
        let fm = image_map(&f);
        f[i] = f[i].clone() - product(&fm, &w).scalar_mul(&c);
        let em = image_map(&e);
        e[i] = e[i].clone() - product(&em, &w).scalar_mul(&c);
    }

    // f ∘ E = A is affine now
    let lin = linear_part(&f);
    let linv = matrix_inverse(&lin)
        .ok_or_else(|| Error::NotInvertible("affine part is singular".into()))?;
    let consts: Vec<C> = f.iter().map(|p| p.constant_term()).collect();
    let a_inv: Vec<NcPoly<C>> = (0..n)
        .map(|i| {
            (0..n).fold(NcPoly::zero(), |acc, j| {
                let shifted = NcPoly::generator(j as u32 + 1) - NcPoly::constant(consts[j].clone());
                acc + shifted.scalar_mul(&linv[i][j])
            })
        })
        .collect();
    let inv = compose_images(&e, &a_inv)?;
    if !is_identity_images(&compose_images(images, &inv)?)
        || !is_identity_images(&compose_images(&inv, images)?)
    {
        return Err(Error::NotInvertible("candidate inverse failed verification".into()));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::tests::{k, x, P};
    use crate::scalars::int;

    #[test]
    fn shear_inverse() {
        let f = vec![x(1) + x(2), x(2)];
        assert_eq!(invert_endomorphism(&f).unwrap(), vec![x(1) - x(2), x(2)]);
    }

    #[test]
    fn degenerate_rejected() {
        let f = vec![x(1), x(1)];
        assert!(matches!(invert_endomorphism(&f), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn triangular_inverse() {
        // e1 ∘ e2 with e1: x1 ↦ x1 + x2², e2: x2 ↦ x2 + x1²
        let e1 = vec![x(1) + x(2) * x(2), x(2)];
        let e2 = vec![x(1), x(2) + x(1) * x(1)];
        let f = compose_images(&e1, &e2).unwrap();
        let g = invert_endomorphism(&f).unwrap();
        assert!(is_identity_images(&compose_images(&f, &g).unwrap()));
    }

    #[test]
    fn affine_and_mixed() {
        let f = vec![
            x(2).scalar_mul(&int(2)) + k(1),
            x(1) + x(2) + x(2) * x(3) * x(2),
            x(3) - k(3),
        ];
        let g = invert_endomorphism(&f).unwrap();
        assert!(is_identity_images(&compose_images(&g, &f).unwrap()));
        let h: Vec<P> = vec![x(1) * x(2), x(2)];
        assert!(invert_endomorphism(&h).is_err());
    }
}
