use okkit_core::algebra::{rat, rational_to_f64, BiDegree, Rational};
use okkit_core::catalog::{list_examples, load_example, weyl_dimension};
use okkit_core::okounkov::*;
use okkit_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn subduction_is_exact_on_random_combinations() {
    for (name, _) in list_examples() {
        let e = load_example(name).unwrap();
        let d = e.datum();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (f, k) = random_combination(d, 4, &mut rng).unwrap();
            let s = subduct(&f, k, d).unwrap();
            assert!(subduction_residual(&f, &s, d).unwrap().is_zero(), "{name}");
            assert!(s.chain.len() as u64 <= semigroup_hilbert(e.semigroup(), k as u64));
            let o = d.backend().orientation();
            for w in s.chain.windows(2) {
                assert_eq!(o.cmp_values(&w[0].value, &w[1].value), core::cmp::Ordering::Less);
            }
        }
    }
}

#[test]
fn level_monomials_count() {
    let e = load_example("elliptic").unwrap();
    // three level-one symbols: C(k+2, 2) monomials
    for k in 0..6u32 {
        let n = (k + 1) * (k + 2) / 2;
        assert_eq!(level_monomials(e.datum(), k).len() as u32, n);
    }
}

#[test]
fn hilbert_matches_brute_force() {
    for (name, _) in list_examples() {
        let s = load_example(name).unwrap().semigroup().clone();
        let h = hilbert_function(&s, 6);
        for k in 0..=6u64 {
            assert_eq!(h[k as usize], brute_force_level(&s, k).len() as u64, "{name} {k}");
        }
    }
}

#[test]
fn elliptic_hilbert_and_degree() {
    let e = load_example("elliptic").unwrap();
    let s = e.semigroup();
    for k in 1..=10u64 {
        assert_eq!(brute_force_level(s, k).len() as u64, 3 * k);
    }
    let r = degree_check(s, 10).unwrap();
    assert_eq!(r.volume, rat(3, 1));
    assert_eq!(r.degree, rat(3, 1));
    assert!(r.relative_error < 1e-9);
    assert!(matches!(degree_check(s, 1), Err(Error::InsufficientSamples { needed: 2, got: 1 })));
}

#[test]
fn bodies_are_consistent() {
    for (name, _) in list_examples() {
        let e = load_example(name).unwrap();
        let b = e.body();
        assert!(b.cross_check(), "{name}");
        for v in b.vertices() {
            assert!(b.contains(v));
            let tight = b.facets().iter().filter(|f| f.slack(v) == Rational::from_integer(0.into())).count();
            assert!(tight >= b.affine_dim().unwrap_or(0).min(1));
        }
        // doubling every level leaves the body unchanged
        let doubled: Vec<BiDegree> = e
            .semigroup()
            .generators()
            .iter()
            .map(|g| BiDegree::new(2 * g.level, g.value.scaled(2).entries().to_vec()))
            .collect();
        let s2 = ValueSemigroup::new(e.semigroup().rank(), doubled).unwrap();
        assert_eq!(okounkov_body(&s2).unwrap().vertices(), b.vertices(), "{name}");
    }
}

#[test]
fn quotient_slice() {
    let e = load_example("elliptic-quotient-demo").unwrap();
    let lam = e.homomorphism().unwrap();
    let sl = e.slice().unwrap();
    assert!(sl.complete);
    for g in sl.semigroup.generators() {
        assert!(lam.apply(g).iter().all(|&x| x == 0));
    }
    assert_eq!(sl.body.vertices(), &[vec![rat(1, 1)]][..]);
    assert_eq!(sl.body, e.body().intersect_affine(&lam.affine_equations()).unwrap());
    for v in sl.body.vertices() {
        let x: Vec<f64> = v.iter().map(rational_to_f64).collect();
        assert!(lam.apply_normalized(&x).iter().all(|y| y.abs() < 1e-15));
    }
    // the zero homomorphism keeps everything
    let zero = GradingHomomorphism::zero(1);
    let full = slice(e.semigroup(), e.body(), &zero, default_slice_bound(e.semigroup())).unwrap();
    assert_eq!(full.body, *e.body());
    assert_eq!(full.semigroup.canonical_generators(), e.semigroup().canonical_generators());
}

#[test]
fn gelfand_cetlin_counts() {
    let e = load_example("gl3-flag").unwrap();
    let rep = e.representation().unwrap();
    for k in 1..=4u64 {
        let lam: Vec<i64> = [2, 1, 0].iter().map(|x| x * k as i64).collect();
        assert_eq!(e.body().count_lattice_points(k) as u128, weyl_dimension(&lam));
    }
    assert_eq!(e.body().count_lattice_points(1), 8);
    assert_eq!(rep.verify(e.body(), 4).unwrap(), vec![8, 27, 64, 125]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn hilbert_agrees_on_random_semigroups(
        gens in prop::collection::vec((1u64..=2, prop::collection::vec(-2i64..=3, 2)), 1..5),
        k in 0u64..5,
    ) {
        let gens: Vec<BiDegree> = gens.into_iter().map(|(l, u)| BiDegree::new(l, u)).collect();
        let s = ValueSemigroup::new(2, gens).unwrap();
        prop_assert_eq!(s.level_sets(k)[k as usize].clone(), brute_force_level(&s, k));
        let b = okounkov_body(&s).unwrap();
        prop_assert!(b.cross_check());
    }
}
