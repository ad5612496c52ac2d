use okkit_core::algebra::{relative_residual, Complex64};
use okkit_core::catalog::{load_example, CatalogEntry};
use okkit_core::embedding::{enumerate_vd_basis, toric_moment, embed_point};
use okkit_core::flow::*;
use okkit_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn setup(name: &str) -> (CatalogEntry, FlowSystem) {
    let e = load_example(name).unwrap();
    let b = enumerate_vd_basis(e.datum(), e.family(), 1).unwrap();
    let sys = FlowSystem::new(e.family(), &b).unwrap();
    (e, sys)
}

fn starts(e: &CatalogEntry, sys: &FlowSystem, cfg: &FlowConfig, n: usize) -> Vec<ChartPoint> {
    sample_points(e.datum(), cfg, n)
        .unwrap()
        .iter()
        .map(|x| start_point(x, cfg, e.datum(), e.family(), sys).unwrap())
        .collect()
}

#[test]
fn config_validation() {
    let ok = FlowConfig::default();
    ok.validate().unwrap();
    for bad in [
        FlowConfig { delta: 0.6, ..ok.clone() },
        FlowConfig { epsilon: 1.0, ..ok.clone() },
        FlowConfig { delta: 0.0, ..ok.clone() },
        FlowConfig { rtol: 0.0, ..ok.clone() },
        FlowConfig { lojasiewicz_alpha: 1.0, ..ok.clone() },
    ] {
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
    }
}

#[test]
fn chart_points() {
    let z = [c(0.1, 0.0), c(0.0, -2.0), c(1.0, 1.0)];
    let p = ChartPoint::from_homogeneous(&z, c(0.5, 0.0)).unwrap();
    assert_eq!(p.chart, 1);
    let back = p.homogeneous();
    for (a, b) in back.iter().zip(&z) {
        assert!((a * z[1] - b).norm() < 1e-15);
    }
    assert!(!p.needs_rechart());
    let q = ChartPoint { chart: 0, coords: vec![c(4.0, 0.0), c(0.0, 0.0)], t: c(0.5, 0.0) };
    assert!(q.needs_rechart());
    assert!(matches!(ChartPoint::from_homogeneous(&[c(0.0, 0.0)], c(0.0, 0.0)), Err(Error::Chart(_))));
}

#[test]
fn frames() {
    let (e, sys) = setup("p1");
    let cfg = FlowConfig::default();
    let pt = &starts(&e, &sys, &cfg, 1)[0];
    let f = sys.tangent_frame(pt).unwrap();
    assert_eq!(f.real().len(), 4);
    assert!(!f.ill_conditioned());

    let (e, sys) = setup("elliptic");
    for pt in starts(&e, &sys, &cfg, 10) {
        let f = sys.tangent_frame(&pt).unwrap();
        let real = f.real();
        assert_eq!(real.len(), 4);
        for a in &real {
            for b in &real {
                let g: f64 = a.iter().zip(b).map(|(x, y)| (x.conj() * y).re).sum();
                assert!((g - if a == b { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
        assert_eq!(sys.fiber_frame(&pt).unwrap().real().len(), 2);
    }
    // the cusp of the special fibre
    let cusp = ChartPoint::from_homogeneous(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], c(0.0, 0.0)).unwrap();
    assert!(matches!(sys.tangent_frame(&cusp), Err(Error::SingularPoint(_))));
}

#[test]
fn gradient_hamiltonian_normalization() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("p1");
    let pt = &starts(&e, &sys, &cfg, 1)[0];
    let v = sys.gradient_hamiltonian(pt).unwrap();
    assert_eq!(v[2], c(-1.0, 0.0));
    assert!(v[..2].iter().all(|x| x.norm() < 1e-15));

    for name in ["p1xp1", "elliptic", "gl3-flag"] {
        let (e, sys) = setup(name);
        for pt in starts(&e, &sys, &cfg, 20) {
            let v = sys.gradient_hamiltonian(&pt).unwrap();
            let m = sys.coordinates();
            assert!((v[m].re + 1.0).abs() < 1e-8, "{name}");
            assert!(v[m].im.abs() < 1e-8, "{name}");
            // ∇Re π = P(e_t) paired with the frame equals the t-components
            let frame = sys.tangent_frame(&pt).unwrap().real();
            let norm2: f64 = 1.0 / v.iter().map(|x| x.norm_sqr()).sum::<f64>();
            for q in &frame {
                let pairing: f64 = v.iter().zip(q).map(|(a, b)| (a.conj() * b).re).sum::<f64>() * -norm2;
                assert!((pairing - q[m].re).abs() < 1e-6, "{name}");
            }
        }
    }
}

#[test]
fn gradient_step_moves_the_fibre_linearly() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("elliptic");
    for pt in starts(&e, &sys, &cfg, 5) {
        let v = sys.gradient_hamiltonian(&pt).unwrap();
        let z = sys.lift(&pt).unwrap();
        let m = sys.coordinates();
        let mut residuals = Vec::new();
        for h in [1e-3, 1e-4] {
            let moved: Vec<Complex64> = z.iter().zip(&v).map(|(a, b)| a + b * h).collect();
            let t = pt.t + v[m] * h;
            let q = ChartPoint::from_homogeneous(&moved, t).unwrap();
            assert!(((q.t.re - pt.t.re) + h).abs() < 1e-12);
            let mut p = moved.clone();
            p.push(t);
            residuals.push(relative_residual(&e.family().family()[0], &p).unwrap());
        }
        // first-order tangency: the relation only changes at second order
        assert!(residuals[1] < residuals[0] / 50.0, "{residuals:?}");
    }
}

#[test]
fn trivial_family_flow_moves_only_t() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("p1");
    for pt in starts(&e, &sys, &cfg, 5) {
        let r = flow_to(&pt, cfg.delta, &cfg, &sys).unwrap().into_result().unwrap();
        assert!((r.terminal.t.re - cfg.delta).abs() < 1e-12);
        for (a, b) in r.terminal.coords.iter().zip(&pt.coords) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}

#[test]
fn elliptic_flow_reaches_the_cusp_fibre() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("elliptic");
    let initial = &e.family().initial_forms()[0];
    for pt in starts(&e, &sys, &cfg, 20) {
        let r = flow_to(&pt, 1e-4, &cfg, &sys).unwrap().into_result().unwrap();
        let d = &r.diagnostics;
        assert!(d.max_re_lin_err < 1e-6);
        assert!(d.max_im_pi < 1e-8);
        assert!(d.max_normalization_err < 1e-8);
        assert!(d.max_residual < cfg.retraction_tol);
        let z = r.terminal.homogeneous();
        assert!(relative_residual(initial, &z).unwrap() < 1e-4);
        for s in &r.samples {
            assert!((s.t.re - (cfg.epsilon - s.s)).abs() < 1e-6);
        }
    }
}

#[test]
fn flows_are_deterministic() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("elliptic");
    let pt = &starts(&e, &sys, &cfg, 1)[0];
    let a = flow_to(pt, cfg.delta, &cfg, &sys).unwrap();
    let b = flow_to(pt, cfg.delta, &cfg, &sys).unwrap();
    assert_eq!(a, b);
    let again = starts(&e, &sys, &cfg, 3);
    assert_eq!(&again[0], pt);
}

#[test]
fn invalid_targets() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("p1");
    let pt = &starts(&e, &sys, &cfg, 1)[0];
    assert!(matches!(flow_to(pt, 0.7, &cfg, &sys), Err(Error::InvalidConfig(_))));
    assert!(matches!(flow_to(pt, 0.0, &cfg, &sys), Err(Error::InvalidConfig(_))));
}

#[test]
fn toric_entry_is_its_own_moment_map() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("p1");
    let xs = sample_points(e.datum(), &cfg, 20).unwrap();
    for x in &xs {
        let f = integrable_system_eval(x, &cfg, e.datum(), e.family(), &sys).unwrap();
        let direct = embed_point(x, e.datum(), e.family(), c(1.0, 0.0), sys.basis()).unwrap();
        assert!((f.value[0] - toric_moment(&direct.z, sys.basis())[0]).abs() < 1e-6);
    }
    // the torus-fixed point u = 0 goes to the vertex 0
    let f = integrable_system_eval(&[c(0.0, 0.0)], &cfg, e.datum(), e.family(), &sys).unwrap();
    assert!(f.value[0].abs() < 1e-12);
}

#[test]
fn elliptic_values_stay_in_the_segment() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("elliptic");
    for x in sample_points(e.datum(), &cfg, 30).unwrap() {
        let f = integrable_system_eval(&x, &cfg, e.datum(), e.family(), &sys).unwrap();
        assert!(f.value[0] > -1e-2 && f.value[0] < 3.0 + 1e-2);
        assert!(f.error_estimate < 1e-3);
    }
}

#[test]
fn brackets() {
    let cfg = FlowConfig::default();
    let (e, sys) = setup("p1xp1");
    for pt in starts(&e, &sys, &cfg, 5) {
        let m = poisson_matrix(&pt, &cfg, &sys).unwrap();
        assert_eq!(m[0][0], 0.0);
        assert_eq!(m[1][1], 0.0);
        assert_eq!(m[0][1], -m[1][0]);
        assert!(m[0][1].abs() < 1e-3);
        assert_eq!(poisson_bracket(0, 1, &pt, &cfg, &sys).unwrap(), m[0][1]);
    }
    let pt = &starts(&e, &sys, &cfg, 1)[0];
    assert!(matches!(poisson_bracket(0, 2, pt, &cfg, &sys), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn symplectic_transport() {
    let cfg = FlowConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, tol) in [("p1", 1e-8), ("p1xp1", 1e-8), ("elliptic", 1e-4)] {
        let (e, sys) = setup(name);
        for pt in starts(&e, &sys, &cfg, 5) {
            let u = random_fiber_vector(&pt, &sys, &mut rng).unwrap();
            let v = random_fiber_vector(&pt, &sys, &mut rng).unwrap();
            let r = symplectic_residual(&pt, &u, &v, &cfg, &sys).unwrap();
            assert!(r < tol, "{name}: {r:e}");
            let zero = vec![c(0.0, 0.0); u.len()];
            assert_eq!(symplectic_residual(&pt, &zero, &v, &cfg, &sys).unwrap(), 0.0);
        }
    }
}

#[test]
fn kahler_form_is_antisymmetric() {
    let u = [c(1.0, 2.0), c(-0.5, 0.3)];
    let v = [c(0.2, -1.0), c(0.7, 0.1)];
    assert_eq!(kahler_form(&u, &v), -kahler_form(&v, &u));
    assert_eq!(kahler_form(&u, &u), 0.0);
    let iu: Vec<Complex64> = u.iter().map(|x| x * c(0.0, 1.0)).collect();
    let n: f64 = u.iter().map(|x| x.norm_sqr()).sum();
    assert!((kahler_form(&u, &iu) - n).abs() < 1e-15);
}
