use std::sync::Arc;

use okkit_core::algebra::{
    parse_polynomial, rat, BiDegree, Complex64, ComplexPolynomial, ExponentVector, Orientation,
    Polynomial, Ring,
};
use okkit_core::catalog::load_example;
use okkit_core::degeneration::{
    build_family, build_projection, buchberger_small, check_projection, initial_form, is_groebner,
    RelationSet, WeightFunctional,
};
use okkit_core::Error;
use proptest::prelude::*;

fn rels(names: &[&str], degrees: &[(u64, &[i64])], gs: &[&str], o: Orientation) -> RelationSet {
    let r = Ring::new(names);
    let degrees = degrees.iter().map(|(k, u)| BiDegree::new(*k, u.to_vec())).collect();
    let gs = gs.iter().map(|g| parse_polynomial(&r, g).unwrap()).collect();
    RelationSet::from_degrees(r, degrees, gs, o).unwrap()
}

fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

#[test]
fn two_step_binomial() {
    let rs = rels(&["a", "b"], &[(1, &[0]), (1, &[2])], &["a + b"], Orientation::Min);
    let p = build_projection(&rs).unwrap();
    assert_eq!(p.p, vec![6, -2]);
    let fam = build_family(&rs, &p).unwrap();
    assert_eq!(fam.weights(), &[6, 2]);
    assert_eq!(fam.levels(), &[6]);
    assert_eq!(fam.family()[0], poly(fam.ring(), "a + b*t^4"));
    let half = fam.specialize_fiber(Complex64::new(0.5, 0.0));
    let b = ExponentVector(vec![0, 1]);
    assert_eq!(half[0].coefficient(&b), Complex64::new(0.0625, 0.0));
    assert_eq!(half[0].coefficient(&ExponentVector(vec![1, 0])), Complex64::new(1.0, 0.0));
}

#[test]
fn fibres_at_zero_and_one_are_exact() {
    let rs = rels(&["a", "b"], &[(1, &[0]), (1, &[2])], &["a + b"], Orientation::Min);
    let fam = build_family(&rs, &build_projection(&rs).unwrap()).unwrap();
    let one = fam.specialize_fiber(Complex64::new(1.0, 0.0));
    let zero = fam.specialize_fiber(Complex64::new(0.0, 0.0));
    assert_eq!(one[0], ComplexPolynomial::from_rational(&rs.relations()[0]));
    assert_eq!(zero[0], ComplexPolynomial::from_rational(&fam.initial_forms()[0]));
}

#[test]
fn single_degree_relation_has_zero_functional() {
    let e = load_example("p1xp1").unwrap();
    assert!(e.projection().is_zero());
    let fam = e.family();
    for (k, (g, gt)) in fam.relations().relations().iter().zip(fam.family()).enumerate() {
        assert_eq!(fam.tau_coefficient(k, 0), *g);
        assert!(gt.terms().all(|(m, _)| m[fam.ring().nvars() - 1] == 0));
    }
}

#[test]
fn elliptic_degenerates_to_the_cusp() {
    let e = load_example("elliptic").unwrap();
    let fam = e.family();
    assert_eq!(e.projection().p, vec![14, -2]);
    assert_eq!(fam.weights(), &[14, 12, 8]);
    assert_eq!(fam.family()[0], poly(fam.ring(), "x1_1^2*x1_3 - x1_2^3 - x1_3^3*t^12"));
    assert_eq!(fam.initial_forms()[0], poly(fam.symbols(), "x1_1^2*x1_3 - x1_2^3"));
    let rs = e.relations();
    assert!(is_groebner(rs.relations(), e.projection(), rs.degrees()).unwrap());
}

#[test]
fn determinant_initial_form_under_max() {
    // x11·x22 has the lex-larger value and is initial for the Max orientation
    let rs = rels(
        &["x11", "x12", "x21", "x22"],
        &[(1, &[2, 0]), (1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])],
        &["x11*x22 - x12*x21"],
        Orientation::Max,
    );
    let p = build_projection(&rs).unwrap();
    let g = &rs.relations()[0];
    assert_eq!(initial_form(g, &p, &rs).unwrap(), poly(rs.symbols(), "x11*x22"));
    let flipped = WeightFunctional { p: p.p.iter().enumerate().map(|(i, x)| if i == 0 { *x } else { -x }).collect() };
    assert!(matches!(initial_form(g, &flipped, &rs), Err(Error::InconsistentProjection(_))));
    assert!(matches!(check_projection(&rs, &flipped), Err(Error::NoProjection(_))));
}

#[test]
fn determinant_initial_form_under_min() {
    let rs = rels(
        &["x11", "x12", "x21", "x22"],
        &[(1, &[2, 0]), (1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])],
        &["x11*x22 - x12*x21"],
        Orientation::Min,
    );
    let p = build_projection(&rs).unwrap();
    let g = &rs.relations()[0];
    assert_eq!(initial_form(g, &p, &rs).unwrap(), poly(rs.symbols(), "-x12*x21"));
}

#[test]
fn single_monomial_forms() {
    let rs = rels(&["a", "b"], &[(1, &[0]), (1, &[2])], &["3*a*b"], Orientation::Min);
    let p = WeightFunctional { p: vec![6, -2] };
    assert_eq!(initial_form(&rs.relations()[0], &p, &rs).unwrap(), poly(rs.symbols(), "3*a*b"));
    assert!(matches!(
        initial_form(&Polynomial::zero(rs.symbols()), &p, &rs),
        Err(Error::UndefinedValuation)
    ));
}

#[test]
fn odd_or_adjacent_weights_are_rejected() {
    let rs = rels(&["a", "b"], &[(1, &[0]), (1, &[1])], &["a + b"], Orientation::Min);
    assert!(matches!(check_projection(&rs, &WeightFunctional { p: vec![3, -1] }), Err(Error::NoProjection(_))));
    // a tie between distinct degrees does not preserve the order
    assert!(matches!(check_projection(&rs, &WeightFunctional { p: vec![2, 0] }), Err(Error::NoProjection(_))));
    assert!(check_projection(&rs, &WeightFunctional { p: vec![2, -2] }).is_ok());
    assert!(matches!(
        build_family(&rs, &WeightFunctional { p: vec![2, 2] }),
        Err(Error::FamilyConstruction(_))
    ));
}

#[test]
fn groebner_checks() {
    let names = ["a", "b", "c", "d"];
    let degs: [(u64, &[i64]); 4] = [(1, &[0]), (1, &[1]), (1, &[2]), (1, &[3])];
    let principal = rels(&names, &degs, &["a*c - b^2"], Orientation::Min);
    let p = build_projection(&principal).unwrap();
    assert_eq!(buchberger_small(principal.relations(), &p, principal.degrees()).unwrap(), principal.relations());

    let coprime = rels(&names, &degs, &["a*c - b^2", "b*d - c^2"], Orientation::Min);
    let p = WeightFunctional { p: vec![0, 0] };
    assert!(is_groebner(coprime.relations(), &p, coprime.degrees()).unwrap());

    let partial = rels(&names, &degs, &["a*c - b^2", "a*d - b*c"], Orientation::Min);
    let basis = buchberger_small(partial.relations(), &p, partial.degrees()).unwrap();
    assert!(basis.len() > 2);
    assert_eq!(&basis[..2], partial.relations());
    // the full twisted cubic ideal is closed
    assert!(is_groebner(&basis, &p, partial.degrees()).unwrap());
}

#[test]
fn large_inputs_are_refused() {
    let e = load_example("gl3-flag").unwrap();
    let rs = e.relations();
    assert!(matches!(
        buchberger_small(rs.relations(), e.projection(), rs.degrees()),
        Err(Error::TooLarge(_))
    ));
}

#[test]
fn catalog_families_verify() {
    for name in ["p1", "p1xp1", "elliptic", "gl3-flag", "elliptic-quotient-demo"] {
        let e = load_example(name).unwrap();
        e.family().verify().unwrap();
        let p = build_projection(e.relations()).unwrap();
        assert_eq!(&p, e.projection(), "{name}: deterministic");
        assert!(p.p.iter().all(|x| x % 2 == 0));
    }
}

fn arb_relation_set() -> impl Strategy<Value = RelationSet> {
    (1usize..=2, prop::collection::vec(prop::collection::vec(0i64..5, 2), 4))
        .prop_flat_map(|(rank, vals)| {
            let terms = prop::collection::vec(((0usize..4, 0usize..4), -3i64..=3), 1..5);
            (Just(rank), Just(vals), prop::collection::vec(terms, 1..3))
        })
        .prop_filter_map("all-zero relation", |(rank, vals, gs)| {
            let r = Ring::new(&["a", "b", "c", "d"]);
            let degrees = vals.iter().map(|v| BiDegree::new(1, v[..rank].to_vec())).collect();
            let mut out = Vec::new();
            for g in gs {
                let terms = g.into_iter().filter(|(_, c)| *c != 0).map(|((i, j), c)| {
                    let mut e = vec![0i64; 4];
                    e[i] += 1;
                    e[j] += 1;
                    (ExponentVector(e), rat(c, 1))
                });
                let p = Polynomial::from_terms(&r, terms).unwrap();
                if p.is_zero() {
                    return None;
                }
                out.push(p);
            }
            RelationSet::from_degrees(r, degrees, out, Orientation::Min).ok()
        })
}

proptest! {
    #[test]
    fn family_invariants(rs in arb_relation_set()) {
        let p = build_projection(&rs).unwrap();
        check_projection(&rs, &p).unwrap();
        let fam = build_family(&rs, &p).unwrap();
        let ti = fam.ring().nvars() - 1;
        for (k, g) in rs.relations().iter().enumerate() {
            prop_assert_eq!(&fam.specialize_exact(k, &rat(1, 1)), g);
            prop_assert_eq!(&fam.specialize_exact(k, &rat(0, 1)), &fam.initial_forms()[k]);
            prop_assert!(fam.tau_coefficient(k, 1).is_zero());
            for (e, _) in fam.family()[k].terms() {
                prop_assert!(e[ti] >= 0 && e[ti] % 2 == 0);
            }
        }
    }
}
