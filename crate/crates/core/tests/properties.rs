use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symclass::base::{
    base_from_triple, classify_base, eigen_lift, pencil_line, planar_model, product_map, involution,
    BasePoint, PencilKind, PlanarClass, Region, Stratum, Wall,
};
use symclass::components::{
    component_graph, fiber_size, normal_form, project, quotient_label, Quotient,
};
use symclass::mat::{char_poly, eigs, mat_exp, symplectic_check, SquareMatrix};
use symclass::sample::{random_gl, random_region_triple, random_triple};
use symclass::signatures::{
    b_signature, floquet_monodromy, krein_gram, krein_signature, FnHamiltonian,
};
use symclass::wonenburger::{assemble, char_poly_triple, from_matrix, gl_action};
use symclass::WonenburgerTriple;

const TOL: f64 = 1e-9;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn close(a: &WonenburgerTriple, b: &WonenburgerTriple, eps: f64) -> bool {
    let s = 1.0 + a.a().max_norm() + a.b().max_norm() + a.c().max_norm();
    a.a().dist(b.a()) <= eps * s && a.b().dist(b.b()) <= eps * s && a.c().dist(b.c()) <= eps * s
}

fn region_strata() -> impl Strategy<Value = Stratum> {
    prop::sample::select(Region::ALL.to_vec()).prop_map(Stratum::Region)
}

fn any_stratum() -> impl Strategy<Value = Stratum> {
    prop::sample::select(Stratum::all())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn char_poly_is_similarity_invariant(seed in any::<u64>(), entries in prop::array::uniform4(-3.0..3.0f64)) {
        let a = SquareMatrix::from_rows([[entries[0], entries[1]], [entries[2], entries[3]]]);
        let r = random_gl(&mut rng(seed));
        let b = &(r.matrix() * &a) * r.inverse_matrix();
        let (p, q) = (char_poly(&a), char_poly(&b));
        prop_assert!(p.relative_distance(&q) < 1e-9);
    }

    #[test]
    fn spectra_are_conjugation_closed(seed in any::<u64>(), s in region_strata()) {
        let t = random_triple(s, &mut rng(seed));
        let spec = eigs(&t.assemble(), TOL).unwrap();
        for e in &spec.eigenvalues {
            let c = spec.nearest(e.value.conj()).unwrap();
            prop_assert!((c.value - e.value.conj()).norm() < 1e-6);
            prop_assert_eq!(c.multiplicity, e.multiplicity);
        }
    }

    #[test]
    fn symplectic_products(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = random_region_triple(&mut rng(s1)).1.assemble();
        let n = random_region_triple(&mut rng(s2)).1.assemble();
        prop_assert!(symplectic_check(&m, 1e-9).unwrap());
        prop_assert!(symplectic_check(&n, 1e-9).unwrap());
        prop_assert!(symplectic_check(&(&m * &n), 1e-9).unwrap());
    }

    #[test]
    fn exp_of_commuting_sum(x in prop::array::uniform3(-2.0..2.0f64), y in prop::array::uniform3(-2.0..2.0f64)) {
        let (dx, dy) = (SquareMatrix::from_diag(&x), SquareMatrix::from_diag(&y));
        let lhs = mat_exp(&(&dx + &dy), 1e-15);
        let rhs = &mat_exp(&dx, 1e-15) * &mat_exp(&dy, 1e-15);
        prop_assert!(lhs.dist(&rhs) <= 1e-12 * (1.0 + lhs.max_norm()));
        let want: Vec<f64> = x.iter().zip(&y).map(|(a, b)| (a + b).exp()).collect();
        prop_assert!(lhs.dist(&SquareMatrix::from_diag(&want)) <= 1e-12 * (1.0 + lhs.max_norm()));
    }

    #[test]
    fn gl_action_composes(s in any::<u64>(), st in region_strata()) {
        let mut g = rng(s);
        let t = random_triple(st, &mut g);
        let (r1, r2) = (random_gl(&mut g), random_gl(&mut g));
        let lhs = gl_action(&r1.compose(&r2), &t).unwrap();
        let rhs = gl_action(&r1, &gl_action(&r2, &t).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn triple_char_poly_is_invariant_and_palindromic(s in any::<u64>(), st in any_stratum()) {
        let mut g = rng(s);
        let t = random_triple(st, &mut g);
        let p = char_poly_triple(&t);
        let q = char_poly_triple(&gl_action(&random_gl(&mut g), &t).unwrap());
        prop_assert!(p.relative_distance(&q) < 1e-8);
        prop_assert!(p.is_palindromic(0.0));
        prop_assert!(p.relative_distance(&char_poly(&t.assemble())) < 1e-8);
    }

    #[test]
    fn assemble_and_from_matrix_are_inverse(s in any::<u64>(), st in any_stratum()) {
        let t = random_triple(st, &mut rng(s));
        let m = assemble(&t);
        let back = from_matrix(&m, TOL).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(assemble(&back), m);
    }

    #[test]
    fn regions_are_locally_constant(tau in -6.0..6.0f64, delta in -6.0..6.0f64, dt in -0.5..0.5f64, dd in -0.5..0.5f64) {
        let p = BasePoint::new(tau, delta);
        let band = p.band(TOL);
        prop_assume!(Wall::ALL.iter().all(|w| w.residual(p).abs() > 4.0 * band));
        let q = BasePoint::new(tau + dt * band, delta + dd * band);
        prop_assert_eq!(classify_base(p, TOL), classify_base(q, TOL));
    }

    #[test]
    fn pencil_lines_touch_the_discriminant(theta in 0.0..1.0f64, tau in -8.0..8.0f64) {
        let line = pencil_line(PencilKind::Elliptic { theta }).unwrap();
        // the line lies below the parabola and meets it only at τ = 2a
        let p = BasePoint::new(tau, line.delta_at(tau));
        let gap = 0.5 * tau - line.slope;
        prop_assert!((Wall::Discriminant.residual(p) + gap * gap).abs() < 1e-12 * (1.0 + tau * tau));
        let t = line.tangency_tau();
        let q = BasePoint::new(t, line.delta_at(t));
        prop_assert!(Wall::Discriminant.residual(q).abs() < 1e-15);
    }

    #[test]
    fn eigen_lifts_are_reciprocal(s in any::<u64>(), st in region_strata()) {
        let t = random_triple(st, &mut rng(s));
        for mu in eigs(t.a(), TOL).unwrap().values() {
            for lam in eigen_lift(mu, st).unwrap() {
                prop_assert!((lam * lam.inv() - 1.0).norm() < 1e-10);
                // complex μ lifts to a quadruple; half of it sits over μ̄
                let sum = lam + lam.inv();
                let err = (sum - 2.0 * mu).norm().min((sum - 2.0 * mu.conj()).norm());
                prop_assert!(err <= 1e-8 * (1.0 + mu.norm()));
            }
        }
    }

    #[test]
    fn products_avoid_n(a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let (x, y) = involution(a, b);
        prop_assert_eq!(product_map(x, y), product_map(a, b));
        prop_assert_ne!(classify_base(product_map(a, b), TOL), Stratum::Region(Region::N));
    }

    #[test]
    fn planar_hyperbolas_forget_orientation(u in 0.05..3.0f64, sign in prop::bool::ANY) {
        let s = if sign { 1.0 } else { -1.0 };
        let planar = |v: f64| {
            WonenburgerTriple::new(
                SquareMatrix::from_diag(&[s * v.cosh()]),
                SquareMatrix::from_diag(&[v.sinh()]),
                SquareMatrix::from_diag(&[v.sinh()]),
                TOL,
            )
            .unwrap()
        };
        let (p, q) = (planar_model(&planar(u), TOL).unwrap(), planar_model(&planar(-u), TOL).unwrap());
        prop_assert_ne!(p.spi, q.spi);
        match (p.sp2, q.sp2) {
            (PlanarClass::Ray { r: r1 }, PlanarClass::Ray { r: r2 }) => {
                prop_assert!((r1 - r2).abs() <= 1e-12 * r1.abs());
                prop_assert!((r1 - s * u.exp()).abs() <= 1e-10 * r1.abs());
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn b_signs_are_basis_free(s in any::<u64>(), st in prop::sample::select(vec![
        Region::E2, Region::EHPlus, Region::EHMinus, Region::HPlusPlus, Region::HMinusPlus, Region::HMinusMinus,
    ])) {
        let mut g = rng(s);
        let t = random_triple(Stratum::Region(st), &mut g);
        let u = gl_action(&random_gl(&mut g), &t).unwrap();
        let (x, y) = (b_signature(&t, TOL).unwrap(), b_signature(&u, TOL).unwrap());
        prop_assert_eq!(x.len(), y.len());
        for (p, q) in x.iter().zip(&y) {
            prop_assert_eq!(p.sign, q.sign);
            prop_assert!((p.mu - q.mu).abs() < 1e-8);
        }
    }

    #[test]
    fn krein_signature_of_conjugate_is_swapped(s in any::<u64>()) {
        let t = random_triple(Stratum::Region(Region::E2), &mut rng(s));
        let m = t.assemble();
        for e in eigs(&m, TOL).unwrap().eigenvalues {
            let (p, q) = krein_signature(&m, e.value, TOL).unwrap();
            prop_assert_eq!(krein_signature(&m, e.value.conj(), TOL).unwrap(), (q, p));
        }
    }

    #[test]
    fn hyperbolic_eigenspaces_are_krein_isotropic(s in any::<u64>()) {
        let t = random_triple(Stratum::Region(Region::EHPlus), &mut rng(s));
        let m = t.assemble();
        for e in eigs(&m, TOL).unwrap().eigenvalues {
            if (e.value.norm() - 1.0).abs() < 1e-3 {
                continue;
            }
            let (gram, k) = krein_gram(&m, e.value, TOL).unwrap();
            prop_assert_eq!(k, 1);
            prop_assert!(gram[0].norm() < 1e-9);
        }
    }

    #[test]
    fn floquet_is_symplectic(w1 in 0.2..2.0f64, w2 in 0.2..2.0f64, eps in 0.0..0.5f64) {
        let h = FnHamiltonian::new(std::f64::consts::TAU, 4, move |t: f64| {
            let mut a = SquareMatrix::from_diag(&[w1 + eps * t.cos(), w2, w1, w2 + eps * t.sin()]);
            a[(0, 1)] = 0.1 * eps;
            a[(1, 0)] = 0.1 * eps;
            a
        });
        let r = floquet_monodromy(&h, 512).unwrap();
        prop_assert!(symplectic_check(&r, 1e-8).unwrap());
    }

    #[test]
    fn normal_forms_are_idempotent(s in any::<u64>(), st in any_stratum()) {
        let t = random_triple(st, &mut rng(s));
        let nf = normal_form(&t, TOL).unwrap();
        prop_assert_eq!(nf.stratum, st);
        let again = normal_form(&nf.representative, TOL).unwrap();
        prop_assert!(close(&again.representative, &nf.representative, 1e-9));
        prop_assert_eq!(&again.signs, &nf.signs);
        if let Some(r) = again.realizing {
            prop_assert!(r.matrix().dist(&SquareMatrix::identity(2)) < 1e-9);
        }
        let (p, q) = (char_poly_triple(&t), char_poly_triple(&nf.representative));
        prop_assert!(p.relative_distance(&q) < 1e-8);
        if let Some(r) = &nf.realizing {
            prop_assert!(close(&gl_action(r, &t).unwrap(), &nf.representative, 1e-8));
        }
    }

    #[test]
    fn labels_respect_fiber_sizes(s in any::<u64>(), st in any_stratum()) {
        let t = random_triple(st, &mut rng(s));
        let spi = quotient_label(&t, Quotient::SpI, TOL).unwrap();
        let sp4 = quotient_label(&t, Quotient::Sp4, TOL).unwrap();
        prop_assert_eq!(project(&spi), sp4.clone());
        let (a, b) = fiber_size(st);
        prop_assert!(a >= b);
        if !st.is_bifurcation_locus() {
            prop_assert!(component_graph(Quotient::SpI).component_of(&spi).is_some());
            prop_assert!(component_graph(Quotient::Sp4).component_of(&sp4).is_some());
        }
    }
}

#[test]
fn base_of_random_triples_is_finite() {
    let mut g = rng(5);
    for st in Stratum::all() {
        let t = random_triple(st, &mut g);
        let p = base_from_triple(&t).unwrap();
        assert!(p.tau.is_finite() && p.delta.is_finite());
    }
}
