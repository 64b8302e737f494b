//! Library results against closed-form matrix computations.

use approx::assert_abs_diff_eq;

use tripotent_core::calculus::{
    is_orthogonal, join_if_exists, leq, meet, peirce, range_tripotent, rank, triple_spectral, Tripotent,
};
use tripotent_core::kernel::{c, diag, identity, singular_value_decomposition, unit, ComplexMatrix, ToleranceProfile};
use tripotent_core::models::{jordan_triple_product, triple_product, TripleElement, TripleModel};
use tripotent_core::morphism::{
    build_consistent_system, dye_extend, local_jordan_evaluate, random_triple_automorphism, ProjectionMap,
    TripotentMap,
};
use tripotent_core::random::{gaussian_matrix, random_element, random_tripotent, random_unitary, stream_rng};
use tripotent_core::suites::{random_orthogonal, standard_table};

fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

fn model(name: &str) -> TripleModel {
    TripleModel::builtin(name).unwrap()
}

fn trip(model: TripleModel, x: ComplexMatrix) -> Tripotent {
    Tripotent::new(TripleElement::from_matrix_with(model, x, &tol()).unwrap(), &tol()).unwrap()
}

fn mat(x: &TripleElement) -> &ComplexMatrix {
    x.matrix().unwrap()
}

#[test]
fn triple_product_matches_the_matrix_formula() {
    let mut rng = stream_rng(1, 0);
    for (m, n) in [(3, 3), (2, 3), (4, 2)] {
        let model = TripleModel::rectangular(m, n).unwrap();
        let (a, b, z) = (gaussian_matrix(&mut rng, m, n), gaussian_matrix(&mut rng, m, n), gaussian_matrix(&mut rng, m, n));
        let expected = (&a * b.adjoint() * &z + &z * b.adjoint() * &a) * c(0.5, 0.0);
        let el = |x: &ComplexMatrix| TripleElement::from_matrix(model, x.clone()).unwrap();
        let got = triple_product(&el(&a), &el(&b), &el(&z)).unwrap();
        assert_abs_diff_eq!((mat(&got) - &expected).norm(), 0.0, epsilon = 1e-12);
        if m == n {
            assert_abs_diff_eq!((jordan_triple_product(&a, &b, &z) - &expected).norm(), 0.0, epsilon = 1e-12);
        }
    }
}

#[test]
fn singular_values_match_the_gram_spectrum() {
    let mut rng = stream_rng(2, 0);
    for (m, n) in [(3, 3), (2, 5), (5, 2), (4, 4)] {
        let a = gaussian_matrix(&mut rng, m, n);
        let svd = singular_value_decomposition(&a, &tol());
        assert_abs_diff_eq!((svd.reconstruct(m, n) - &a).norm(), 0.0, epsilon = 1e-10);
        let mut gram: Vec<f64> = (a.adjoint() * &a).symmetric_eigen().eigenvalues.iter().copied().collect();
        gram.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (s, g) in svd.sigmas.iter().zip(&gram) {
            assert_abs_diff_eq!(s * s, *g, epsilon = 1e-9);
        }
        for (i, l) in svd.left.iter().enumerate() {
            let r = &svd.right[i];
            assert_abs_diff_eq!((&a * r - l * c(svd.sigmas[i], 0.0)).norm(), 0.0, epsilon = 1e-10);
        }
    }
}

#[test]
fn peirce_projections_are_corner_compressions() {
    let t = tol();
    for name in ["m3", "r23", "a5", "m4"] {
        let m = model(name);
        for k in 0..12 {
            let mut rng = stream_rng(3, k);
            let u = random_tripotent(&mut rng, m, &t).unwrap();
            let p = peirce(&u, &t).unwrap();
            let (pi, pf) = (u.initial_projection().unwrap(), u.final_projection().unwrap());
            let (qi, qf) = (identity(pi.nrows()) - pi, identity(pf.nrows()) - pf);
            let x = random_element(&mut rng, m);
            let xm = mat(&x);
            let two = pf * xm * pi;
            let zero = &qf * xm * &qi;
            let one = xm - &two - &zero;
            for (k, expected) in [(0, zero), (1, one), (2, two)] {
                let got = p.project(k, &x).unwrap();
                assert_abs_diff_eq!((mat(&got) - expected).norm(), 0.0, epsilon = 1e-9);
            }
        }
    }
}

#[test]
fn peirce_dimensions_follow_the_rank() {
    let t = tol();
    for (name, rows, cols) in [("m3", 3, 3), ("r23", 2, 3), ("m4", 4, 4)] {
        let m = model(name);
        for k in 0..10 {
            let mut rng = stream_rng(4, k);
            let u = random_tripotent(&mut rng, m, &t).unwrap();
            let r = rank(&u);
            let p = peirce(&u, &t).unwrap();
            assert_eq!(p.dim(2), 2 * r * r, "{name}");
            assert_eq!(p.dim(0), 2 * (rows - r) * (cols - r), "{name}");
            assert_eq!(p.dim(1), 2 * rows * cols - p.dim(0) - p.dim(2), "{name}");
        }
    }
    let a5 = model("a5");
    let u12 = trip(a5, unit(5, 5, 0, 1) - unit(5, 5, 1, 0));
    let p = peirce(&u12, &t).unwrap();
    assert_eq!((p.dim(2), p.dim(1), p.dim(0)), (2, 12, 6));
}

fn doubly_orthogonal(u: &ComplexMatrix, v: &ComplexMatrix) -> bool {
    (u.adjoint() * v).norm() <= 1e-9 && (u * v.adjoint()).norm() <= 1e-9
}

#[test]
fn orthogonality_is_double_orthogonality() {
    let t = tol();
    for name in ["m3", "r23", "a5", "a3"] {
        let m = model(name);
        for k in 0..40 {
            let mut rng = stream_rng(5, k);
            let u = random_tripotent(&mut rng, m, &t).unwrap();
            let v = if k % 2 == 0 { random_orthogonal(&mut rng, &u, &t).unwrap() } else { random_tripotent(&mut rng, m, &t).unwrap() };
            let expected = doubly_orthogonal(u.matrix().unwrap(), v.matrix().unwrap());
            assert_eq!(is_orthogonal(&u, &v, &t).unwrap(), expected, "{name} sample {k}");
        }
    }
}

#[test]
fn order_is_the_partial_isometry_restriction() {
    let t = tol();
    let m3 = model("m3");
    for k in 0..60 {
        let mut rng = stream_rng(6, k);
        let u = random_tripotent(&mut rng, m3, &t).unwrap();
        let e = if k % 2 == 0 {
            let w = random_orthogonal(&mut rng, &u, &t).unwrap();
            trip(m3, u.matrix().unwrap() + w.matrix().unwrap())
        } else {
            random_tripotent(&mut rng, m3, &t).unwrap()
        };
        let (um, em) = (u.matrix().unwrap(), e.matrix().unwrap());
        let expected = (em * um.adjoint() * um - um).norm() <= 1e-9;
        assert_eq!(leq(&u, &e, &t).unwrap(), expected, "sample {k}");
    }
}

#[test]
fn range_tripotent_is_the_polar_part() {
    let t = tol();
    let m3 = model("m3");
    let x = TripleElement::from_matrix(m3, unit(3, 3, 0, 1) * c(2.0, 0.0)).unwrap();
    assert_abs_diff_eq!((mat(range_tripotent(&x, &t).unwrap().element()) - unit(3, 3, 0, 1)).norm(), 0.0, epsilon = 1e-12);
    let mut rng = stream_rng(7, 0);
    let g = gaussian_matrix(&mut rng, 3, 3);
    let r = range_tripotent(&TripleElement::from_matrix(m3, g.clone()).unwrap(), &t).unwrap();
    // g = r |g| with |g| = (g*g)^{1/2}.
    let eig = (g.adjoint() * &g).symmetric_eigen();
    let sqrt = &eig.eigenvectors
        * ComplexMatrix::from_diagonal(&eig.eigenvalues.map(|l| c(l.max(0.0).sqrt(), 0.0)))
        * eig.eigenvectors.adjoint();
    assert_abs_diff_eq!((r.matrix().unwrap() * sqrt - g).norm(), 0.0, epsilon = 1e-9);
}

#[test]
fn spectral_form_of_a_diagonal() {
    let t = tol();
    let m3 = model("m3");
    let x = TripleElement::from_matrix(m3, diag(&[3.0, 1.0, 0.0])).unwrap();
    let s = triple_spectral(&x, &t).unwrap();
    assert_eq!(s.coefficients.len(), 2);
    assert_abs_diff_eq!(s.coefficients[0], 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(s.coefficients[1], 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!((s.tripotents[0].matrix().unwrap() - unit(3, 3, 0, 0)).norm(), 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!((s.tripotents[1].matrix().unwrap() - unit(3, 3, 1, 1)).norm(), 0.0, epsilon = 1e-12);
}

#[test]
fn meets_of_coordinate_tripotents() {
    let t = tol();
    let m3 = model("m3");
    let m = |a: ComplexMatrix, b: ComplexMatrix| meet(&trip(m3, a), &trip(m3, b), &t).unwrap().matrix().unwrap().clone();
    assert_abs_diff_eq!((m(diag(&[1.0, 1.0, 0.0]), diag(&[1.0, 0.0, 1.0])) - unit(3, 3, 0, 0)).norm(), 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!((m(unit(3, 3, 0, 1) + unit(3, 3, 1, 0), unit(3, 3, 0, 1)) - unit(3, 3, 0, 1)).norm(), 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(m(identity(3), -identity(3)).norm(), 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!((m(identity(3), diag(&[1.0, -1.0, 1.0])) - diag(&[1.0, 0.0, 1.0])).norm(), 0.0, epsilon = 1e-12);
}

#[test]
fn joins_of_compatible_and_incompatible_pairs() {
    let t = tol();
    let m3 = model("m3");
    let (e11, e22) = (trip(m3, unit(3, 3, 0, 0)), trip(m3, unit(3, 3, 1, 1)));
    let j = join_if_exists(&e11, &e22, &t).unwrap().unwrap();
    assert_abs_diff_eq!((j.matrix().unwrap() - diag(&[1.0, 1.0, 0.0])).norm(), 0.0, epsilon = 1e-12);
    let e12 = trip(m3, unit(3, 3, 0, 1));
    assert!(join_if_exists(&e11, &e12, &t).unwrap().is_none());
}

#[test]
fn dye_extension_recovers_conjugation_on_m4() {
    let t = tol();
    let mut rng = stream_rng(8, 0);
    let v = random_unitary(&mut rng, 4);
    let ext = dye_extend(&ProjectionMap::conjugation(&v, &t).unwrap(), &t).unwrap();
    let m4 = model("m4");
    let d = ext
        .extension
        .distance_to(|x| TripleElement::from_matrix(m4, &v * x.matrix()? * v.adjoint()))
        .unwrap();
    assert!(d <= 1e-8, "{d}");
    assert!(ext.certification.is_pass());
}

#[test]
fn consistent_system_reproduces_an_automorphism_of_m4() {
    let t = tol();
    let m4 = model("m4");
    let mut rng = stream_rng(9, 0);
    let map = TripotentMap::new(m4, random_triple_automorphism(&mut rng, 4)).unwrap();
    let table = standard_table(4, &t).unwrap();
    let sys = build_consistent_system(&map, table.tripotents(), &t).unwrap();
    assert!(sys.report().is_pass());
    for _ in 0..20 {
        let x = random_element(&mut rng, m4);
        let d = local_jordan_evaluate(&sys, &x, &t).unwrap().distance(&map.apply_element(&x, &t).unwrap());
        assert!(d <= 1e-8, "{d}");
    }
}
