use okkit_core::algebra::{parse_polynomial, Complex64, ExponentVector, Reductions, Ring, ValuationBackend, Orientation};
use okkit_core::catalog::load_example;
use okkit_core::degeneration::{build_family, build_projection, RelationSet};
use okkit_core::embedding::{
    default_degree, embed_point, enumerate_vd_basis, generator_coordinates, family_residual,
    rescale_action, toric_moment, IntrinsicSampler, ProjectivePoint,
};
use okkit_core::okounkov::{Generator, SagbiDatum};
use okkit_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 5] = ["p1", "p1xp1", "elliptic", "gl3-flag", "elliptic-quotient-demo"];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_level() -> (SagbiDatum, okkit_core::degeneration::FamilyPresentation) {
    let r = Ring::new(&["u"]);
    let gens = [(1, "1", 0), (1, "u", 1), (2, "u^3", 3)]
        .iter()
        .map(|(k, s, v)| Generator { level: *k, rep: parse_polynomial(&r, s).unwrap(), value: ExponentVector(vec![*v]) })
        .collect();
    let d = SagbiDatum::new(r, ValuationBackend::Monomial(Orientation::Min), Reductions::none(), gens, 0).unwrap();
    let rels = RelationSet::new(&d, vec![]).unwrap();
    let fam = build_family(&rels, &build_projection(&rels).unwrap()).unwrap();
    (d, fam)
}

#[test]
fn weighted_composition_basis() {
    let (d, fam) = two_level();
    assert_eq!(default_degree(&d), 2);
    let b = enumerate_vd_basis(&d, &fam, 2).unwrap();
    let alphas: Vec<Vec<u32>> = b.entries().iter().map(|e| e.alpha.clone()).collect();
    assert_eq!(alphas, vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![0, 0, 1]]);
    assert_eq!(b.entries()[1].torus_weight, ExponentVector(vec![1]));
    assert!(!b.is_linear());
    assert!(matches!(enumerate_vd_basis(&d, &fam, 3), Err(Error::InvalidDatum(_))));
    // level-2 coordinates: u^3 / h^2 at weight-0 family
    let x = [c(2.0, 0.0)];
    let p = embed_point(&x, &d, &fam, c(1.0, 0.0), &b).unwrap();
    let raw = [1.0, 2.0, 4.0, 8.0];
    let n = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    for (z, r) in p.z.iter().zip(raw) {
        assert!((z - c(r / n, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn curve_basis_is_the_coordinates() {
    let e = load_example("elliptic").unwrap();
    let b = enumerate_vd_basis(e.datum(), e.family(), 1).unwrap();
    assert_eq!(b.len(), 3);
    assert!(b.is_linear());
    let w: Vec<i64> = b.entries().iter().map(|e| e.cstar_weight).collect();
    assert_eq!(w, vec![14, 12, 8]);
}

#[test]
fn projective_line_points() {
    let e = load_example("p1").unwrap();
    let b = enumerate_vd_basis(e.datum(), e.family(), 1).unwrap();
    let one = c(1.0, 0.0);
    let p = embed_point(&[c(0.0, 0.0)], e.datum(), e.family(), one, &b).unwrap();
    assert_eq!(p.z, vec![one, c(0.0, 0.0)]);
    assert_eq!(toric_moment(&p.z, &b), vec![0.0]);
    let p = embed_point(&[one], e.datum(), e.family(), one, &b).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((p.z[0] - c(s, 0.0)).norm() < 1e-15 && (p.z[1] - c(s, 0.0)).norm() < 1e-15);
    assert!((toric_moment(&p.z, &b)[0] - 0.5).abs() < 1e-15);
    // the phase of u does not matter after normalization
    let p = embed_point(&[c(0.0, 3.0)], e.datum(), e.family(), one, &b).unwrap();
    assert!((toric_moment(&p.z, &b)[0] - 0.9).abs() < 1e-15);
}

#[test]
fn base_locus_and_off_fibre_points() {
    let e = load_example("elliptic").unwrap();
    let b = enumerate_vd_basis(e.datum(), e.family(), 1).unwrap();
    let t = c(0.5, 0.0);
    // h = y vanishes at the roots of x³ + 1
    let err = embed_point(&[c(-1.0, 0.0), c(0.0, 0.0)], e.datum(), e.family(), t, &b);
    assert!(matches!(err, Err(Error::Chart(_))));
    let err = embed_point(&[c(1.0, 0.0), c(1.0, 0.0)], e.datum(), e.family(), t, &b);
    assert!(matches!(err, Err(Error::Evaluation(_))));
    // close to a root the embedding is still accurate
    let x = c(-1.0 + 1e-3, 0.0);
    let y = (x * x * x + 1.0).sqrt();
    let g = generator_coordinates(&[x, y], e.datum(), e.family(), t).unwrap();
    assert!(family_residual(e.family(), &g, t).unwrap() < 1e-9);
}

#[test]
fn vertex_and_midpoint_moments() {
    let e = load_example("elliptic").unwrap();
    let b = enumerate_vd_basis(e.datum(), e.family(), 1).unwrap();
    let z = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, -2.0)];
    assert_eq!(toric_moment(&z, &b), vec![3.0]);
    let z = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
    assert_eq!(toric_moment(&z, &b), vec![2.0]);
}

#[test]
fn rescaling() {
    let e = load_example("elliptic").unwrap();
    let b = enumerate_vd_basis(e.datum(), e.family(), 1).unwrap();
    let smp = IntrinsicSampler::new(e.datum(), (-1.0, 1.0)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = embed_point(&smp.sample(e.datum(), &mut rng).unwrap(), e.datum(), e.family(), c(0.3, 0.0), &b).unwrap();
    assert!(rescale_action(&p, c(1.0, 0.0), &b).unwrap().distance(&p) < 1e-15);
    assert_eq!(rescale_action(&p, c(0.0, 0.0), &b), Err(Error::InvalidScale));
    // a torus-fixed point only moves in t
    let fixed = ProjectivePoint::normalized(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], c(0.3, 0.0)).unwrap();
    let moved = rescale_action(&fixed, c(2.0, 1.0), &b).unwrap();
    assert_eq!(moved.z, fixed.z);
    assert_eq!(moved.t, c(0.6, 0.3));
}

#[test]
fn rescaling_commutes_with_embedding() {
    for name in ["p1", "elliptic", "gl3-flag"] {
        let e = load_example(name).unwrap();
        let b = enumerate_vd_basis(e.datum(), e.family(), 1).unwrap();
        let smp = IntrinsicSampler::new(e.datum(), (-1.0, 1.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = smp.sample(e.datum(), &mut rng).unwrap();
            let s = c(0.2 + rand::Rng::random::<f64>(&mut rng), rand::Rng::random::<f64>(&mut rng) - 0.5);
            let t = c(0.5, 0.0);
            let lhs = rescale_action(&embed_point(&x, e.datum(), e.family(), t, &b).unwrap(), s, &b).unwrap();
            let rhs = embed_point(&x, e.datum(), e.family(), t * s, &b).unwrap();
            assert!(lhs.distance(&rhs) < 1e-10, "{name}: {}", lhs.distance(&rhs));
        }
    }
}

#[test]
fn samples_embed_and_stay_in_the_body() {
    for name in NAMES {
        let e = load_example(name).unwrap();
        let b = enumerate_vd_basis(e.datum(), e.family(), default_degree(e.datum())).unwrap();
        let smp = IntrinsicSampler::new(e.datum(), (-3.0, 3.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = smp.sample(e.datum(), &mut rng).unwrap();
            for t in [c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)] {
                let g = generator_coordinates(&x, e.datum(), e.family(), t).unwrap();
                assert!(family_residual(e.family(), &g, t).unwrap() < 1e-9, "{name}");
                let p = embed_point(&x, e.datum(), e.family(), t, &b).unwrap();
                let norm: f64 = p.z.iter().map(|z| z.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-12);
                let mu = toric_moment(&p.z, &b);
                assert!(e.body().violation(&mu) < 1e-9, "{name}: {mu:?}");
            }
        }
    }
}

proptest! {
    #[test]
    fn moment_is_phase_invariant(re in prop::collection::vec(-3.0f64..3.0, 4), im in prop::collection::vec(-3.0f64..3.0, 4), theta in prop::collection::vec(-4.0f64..4.0, 2)) {
        let e = load_example("p1xp1").unwrap();
        let b = enumerate_vd_basis(e.datum(), e.family(), 1).unwrap();
        let z: Vec<Complex64> = re.iter().zip(&im).map(|(a, b)| c(*a, *b)).collect();
        prop_assume!(z.iter().any(|v| v.norm() > 1e-3));
        let rotated: Vec<Complex64> = z.iter().zip(b.entries()).map(|(v, e)| {
            let ang: f64 = e.torus_weight.entries().iter().zip(&theta).map(|(l, th)| *l as f64 * th).sum();
            v * Complex64::from_polar(1.0, ang)
        }).collect();
        let a = toric_moment(&z, &b);
        let r = toric_moment(&rotated, &b);
        for (x, y) in a.iter().zip(&r) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
