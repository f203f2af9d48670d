use fvw_core::catkit::*;
use fvw_core::groupalg::RepVector;
use fvw_core::ncpoly::{DerivedSig, NcPoly, Orientation};
use fvw_core::reps::{central_inv, mirror_delta, RepObject, RepPoint};
use fvw_core::sample::{case_rng, Sample, SampleConfig};
use fvw_core::scalars::{int, FieldAuto, Scalar};
use fvw_core::words::{GroupWord, Word};
use fvw_core::Error;

type P = NcPoly<Scalar>;

fn x(i: u32) -> P {
    NcPoly::generator(i)
}

fn k(n: i64) -> P {
    NcPoly::constant(Scalar::rational(int(n)))
}

fn hom(src: u32, tgt: u32, images: Vec<P>) -> QuasiHom<AssocAlgebras> {
    QuasiHom::standard(src, tgt, images).unwrap()
}

fn mirror() -> Presentation<AssocAlgebras> {
    Presentation::new(AssocKind::new(Orientation::Dual, FieldAuto::Identity))
}

#[test]
fn identity_presentation_fixes_everything() {
    let aut = Presentation::<AssocAlgebras>::identity();
    let nu = hom(2, 2, vec![&x(1) * &x(2) + k(3), x(1)]);
    assert_eq!(aut.apply_aut(&nu).unwrap(), nu);
    let a = &x(2) * &x(1) - x(2);
    assert_eq!(aut.main_function(&2, &a).unwrap(), a);
    assert_eq!(aut.push_endomorphism(&nu).unwrap(), nu);
    assert!(check_basis_image(&aut, &3).unwrap().pass);
}

#[test]
fn mirror_reverses_products() {
    let aut = mirror();
    let nu = hom(1, 2, vec![&x(1) * &x(2)]);
    assert_eq!(aut.apply_aut(&nu).unwrap(), hom(1, 2, vec![&x(2) * &x(1)]));
    assert_eq!(aut.main_function(&2, &(&x(1) * &x(2))).unwrap(), &x(2) * &x(1));
    let theta = hom(2, 2, vec![&x(1) * &x(2), x(1)]);
    let pushed = aut.push_endomorphism(&theta).unwrap();
    assert_eq!(pushed, hom(2, 2, vec![&x(2) * &x(1), x(1)]));
    assert_eq!(pushed, aut.apply_aut(&theta).unwrap());
}

#[test]
fn uncovered_objects_are_reported() {
    let aut = mirror().with_fragment([1, 2]);
    let nu = hom(2, 3, vec![x(1), x(3)]);
    assert!(matches!(aut.apply_aut(&nu), Err(Error::MissingInnerData(_))));
}

#[test]
fn non_standard_inputs_are_rejected() {
    let aut = Presentation::<AssocAlgebras>::identity();
    let anti = QuasiHom::<AssocAlgebras>::new(1, 1, vec![x(1)], AssocKind::new(Orientation::Dual, FieldAuto::Identity))
        .unwrap();
    assert!(matches!(aut.apply_aut(&anti), Err(Error::Precondition(_))));
}

#[test]
fn push_needs_fixed_generators() {
    let aut = Presentation::<AssocAlgebras>::identity()
        .with_inner(2, vec![x(1) + x(2), x(2)], None)
        .unwrap();
    let theta = hom(2, 2, vec![&x(1) * &x(1), x(2)]);
    assert!(matches!(aut.push_endomorphism(&theta), Err(Error::Precondition(_))));
}

#[test]
fn basis_image_examples() {
    let good = check_basis_images::<AssocAlgebras>(&2, &[x(1) + x(2), x(2)]);
    assert!(good.pass);
    assert_eq!(good.inverse.unwrap(), vec![(x(1) - x(2)).to_string(), x(2).to_string()]);
    let bad = check_basis_images::<AssocAlgebras>(&2, &[x(1), x(1)]);
    assert!(!bad.pass);
    assert!(bad.reason.is_some());

    let aut = Presentation::<AssocAlgebras>::identity()
        .with_inner(2, vec![x(1) + &x(2) * &x(2), x(2)], None)
        .unwrap();
    assert!(check_basis_image(&aut, &2).unwrap().pass);
}

#[test]
fn central_candidates() {
    let cfg = SampleConfig::default();
    let sig = DerivedSig::new(Scalar::rational(int(2)), Scalar::rational(int(5)), Orientation::Straight).unwrap();
    let mut cases = Vec::new();
    for i in 0..40 {
        let mut rng = case_rng(21, i);
        let a = AssocAlgebras::sample_object(&mut rng, &cfg);
        let b = AssocAlgebras::sample_object(&mut rng, &cfg);
        let nu = AssocAlgebras::sample_morphism(&mut rng, &a, &b, &cfg);
        let p = AssocAlgebras::sample_elem(&mut rng, &a, &cfg);
        cases.push((nu, p));
    }
    let c = |_: &u32, p: &P| Ok(sig.central_map(p));
    let c_inv = |_: &u32, p: &P| Ok(sig.central_inv(p));
    assert!(check_central(c, c_inv, &cases).unwrap().is_empty());

    let shift = |_: &u32, p: &P| Ok(p.clone() + x(1));
    let unshift = |_: &u32, p: &P| Ok(p.clone() - x(1));
    let nu = hom(2, 2, vec![x(2), x(1)]);
    let fails = check_central(shift, unshift, &[(nu, x(2))]).unwrap();
    assert_eq!(fails.len(), 1);

    let mut gcases = Vec::new();
    for i in 0..40 {
        let mut rng = case_rng(22, i);
        let a = Groups::sample_object(&mut rng, &cfg);
        let b = Groups::sample_object(&mut rng, &cfg);
        let nu = Groups::sample_morphism(&mut rng, &a, &b, &cfg);
        let g = Groups::sample_elem(&mut rng, &a, &cfg);
        gcases.push((nu, g));
    }
    let inv = |_: &u32, g: &GroupWord| Ok(g.invert());
    assert!(check_central(inv, inv, &gcases).unwrap().is_empty());
}

#[test]
fn rep_identity_splits() {
    let aut = Presentation::<Representations>::identity();
    let cfg = SampleConfig::default();
    let obj = RepObject::new(2, 2);
    let mut pts = Vec::new();
    for i in 0..20 {
        let mut rng = case_rng(31, i);
        let p = Representations::sample_elem(&mut rng, &obj, &cfg);
        assert_eq!(aut.main_function(&obj, &p).unwrap(), p);
        pts.push(p);
    }
    assert!(check_splitting(&aut, &obj, &pts).unwrap().is_empty());
}

#[test]
fn rep_mirror_main_function_is_delta() {
    let aut = Presentation::<Representations>::new(RepKind::new(true, FieldAuto::Identity));
    let obj = RepObject::new(1, 2);
    let p = RepPoint::new(
        RepVector::basis(1).mul_right(&fvw_core::groupalg::GroupAlgElem::word(GroupWord::generator(2))),
        GroupWord::generator(1),
    );
    let s = aut.main_function(&obj, &p).unwrap();
    assert_eq!(s, mirror_delta(&p));
    assert_eq!(s, central_inv(&inv_words_only(&p)));
}

/// ε: x_i ↦ x_i⁻¹ on the module part and the group part.
fn inv_words_only(p: &RepPoint<Scalar>) -> RepPoint<Scalar> {
    RepPoint::new(p.v.inv_words(), GroupWord::from_letters(p.g.letters().iter().map(|l| l.inv())).unwrap())
}

fn sampled_homs<V: Sample>(seed: u64, n: u64, cfg: &SampleConfig, objs: &[V::Obj]) -> Vec<QuasiHom<V>> {
    (0..n)
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let a = &objs[i as usize % objs.len()];
            let b = &objs[(i as usize / objs.len()) % objs.len()];
            V::sample_morphism(&mut rng, a, b, cfg)
        })
        .collect()
}

#[test]
fn factorize_mirror_conjugation_shift() {
    let d = Some(2);
    let cfg = SampleConfig { sqrt: d, ..SampleConfig::default() };
    let objs = [1u32, 2, 3];
    let mut aut = Presentation::<AssocAlgebras>::new(AssocKind::new(Orientation::Dual, FieldAuto::Conjugation))
        .with_sqrt(d)
        .with_fragment(objs);
    for n in objs {
        let mut images: Vec<P> = (1..=n).map(x).collect();
        images[0] = x(1) + k(1);
        aut = aut.with_inner(n, images, None).unwrap();
    }
    let fact = factorize(&aut, &objs).unwrap();
    assert_eq!(fact.upsilon, Orientation::Dual);
    assert_eq!(fact.phi, FieldAuto::Conjugation);
    let homs = sampled_homs::<AssocAlgebras>(41, 100, &cfg, &objs);
    assert!(verify_factorization(&aut, &fact, &homs).unwrap().is_empty());
    let samples: Vec<_> = (0..100)
        .map(|i| {
            let mut rng = case_rng(42, i);
            let n = objs[i as usize % 3];
            let a = fvw_core::sample::sample_scalar(&mut rng, &cfg);
            (n, a, AssocAlgebras::sample_elem(&mut rng, &n, &cfg))
        })
        .collect();
    assert!(verify_twisted_part(&fact, &samples).unwrap().is_empty());
}

#[test]
fn factorize_trivial_cases() {
    let objs = [1u32, 2];
    let pure = mirror().with_fragment(objs);
    let f = factorize(&pure, &objs).unwrap();
    assert_eq!(f.upsilon, Orientation::Dual);
    assert!(f.phi.is_identity());
    assert!(f.inner.inner.values().all(|e| e.images == AssocAlgebras::generators(&2)[..e.images.len()]));

    let id = Presentation::<AssocAlgebras>::identity().with_fragment(objs);
    let f = factorize(&id, &objs).unwrap();
    assert_eq!(f.upsilon, Orientation::Straight);
    assert!(f.phi.is_identity());
}

fn random_roundtrip<V: Sample + Factorable>(seed: u64, kinds: &[V::Kind], objs: &[V::Obj], d: Option<i64>) {
    let cfg = SampleConfig { sqrt: d, ..SampleConfig::default() };
    for (t, &kind) in kinds.iter().enumerate() {
        let mut rng = case_rng(seed, 1000 + t as u64);
        let mut aut = Presentation::<V>::new(kind).with_sqrt(d).with_fragment(objs.iter().cloned());
        for o in objs {
            let e = V::sample_inner(&mut rng, o, &cfg);
            aut = aut.with_inner(o.clone(), e.images, Some(e.inverse)).unwrap();
        }
        let fact = factorize(&aut, objs).unwrap();
        let homs = sampled_homs::<V>(seed + t as u64, 30, &cfg, objs);
        let fails = verify_factorization(&aut, &fact, &homs).unwrap();
        assert!(fails.is_empty(), "{kind:?}: {:?}", fails[0]);
        let pairs: Vec<_> = homs.windows(2).filter(|w| w[0].source == w[1].target).map(|w| (w[0].clone(), w[1].clone())).collect();
        assert!(check_functoriality(&aut, &pairs).unwrap().is_empty());
        // The main function nests three substitutions; small points keep it cheap.
        let small = SampleConfig { max_degree: 1, max_terms: 2, max_word_len: 2, ..cfg.clone() };
        let cases: Vec<_> = homs
            .iter()
            .map(|nu| (nu.clone(), V::sample_elem(&mut rng, &nu.source, &small)))
            .collect();
        assert!(check_inner_and_central(&aut, &cases).unwrap().is_empty());
    }
}

const BOTH: [Orientation; 2] = [Orientation::Straight, Orientation::Dual];

#[test]
fn roundtrip_semigroups() {
    random_roundtrip::<Semigroups>(51, &BOTH, &[1, 2, 3], None);
}

#[test]
fn roundtrip_groups() {
    random_roundtrip::<Groups>(52, &BOTH, &[1, 2, 3], None);
}

#[test]
fn roundtrip_assoc() {
    let o = BOTH;
    let assoc: Vec<AssocKind> = o
        .iter()
        .flat_map(|&or| [FieldAuto::Identity, FieldAuto::Conjugation].map(|p| AssocKind::new(or, p)))
        .collect();
    random_roundtrip::<AssocAlgebras>(53, &assoc, &[1, 2, 3], Some(2));
}

#[test]
fn roundtrip_reps() {
    let rep: Vec<RepKind> = [false, true]
        .iter()
        .flat_map(|&dl| [FieldAuto::Identity, FieldAuto::Conjugation].map(|p| RepKind::new(dl, p)))
        .collect();
    let objs = [RepObject::new(1, 1), RepObject::new(1, 2), RepObject::new(2, 1), RepObject::new(2, 2)];
    random_roundtrip::<Representations>(54, &rep, &objs, Some(2));
}

#[test]
fn constants_stay_constant() {
    let aut = Presentation::<AssocAlgebras>::new(AssocKind::new(Orientation::Straight, FieldAuto::Conjugation))
        .with_sqrt(Some(2))
        .with_inner(1, vec![x(1).scalar_mul(&Scalar::rational(int(2))) + k(3)], None)
        .unwrap();
    let r2 = Scalar::sqrt(2).unwrap();
    let consts = vec![Scalar::rational(int(0)), Scalar::rational(int(1)), r2.clone(), r2 * Scalar::rational(int(3))];
    assert!(check_constants(&aut, &consts).unwrap().is_empty());
}
