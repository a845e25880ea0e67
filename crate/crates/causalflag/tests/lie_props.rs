//! Matrix model tests: dimensions, gradings, Euler elements, the bracket
//! reconstruction of the Jordan product, wedges and orientation signs.

use causalflag::jordan::{Algebra, Family};
use causalflag::lie::{
    ad_spectrum_class, grade_project, matrix_model, orientation_sign, wedge_bracket_test,
    wedge_membership_hj, SpectrumClass,
};
use causalflag::linalg;
use causalflag::par::rng_for;
use rand::Rng;
use nalgebra::DMatrix;

fn model_algebras() -> Vec<Algebra> {
    vec![
        Algebra::new(Family::SymR, 1).unwrap(),
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::SymR, 3).unwrap(),
        Algebra::new(Family::HermC, 1).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::HermH, 1).unwrap(),
        Algebra::new(Family::HermH, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 3).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
        Algebra::new(Family::SpinFactor, 6).unwrap(),
        Algebra::new(Family::DirectSum(Box::new(Family::SymR)), 2).unwrap(),
    ]
}

#[test]
fn model_dimensions() {
    // sp_2(R): dim 3 = r(2r+1)
    let m = matrix_model(&Algebra::new(Family::SymR, 1).unwrap()).unwrap();
    assert_eq!(m.dim(), 3);
    // so_{2,4}: dim (d+2)(d+1)/2 = 15
    let m = matrix_model(&Algebra::new(Family::SpinFactor, 4).unwrap()).unwrap();
    assert_eq!(m.dim(), 15);
    // u(Omega, C^4): dim 4 r^2 = 16
    let m = matrix_model(&Algebra::new(Family::HermC, 2).unwrap()).unwrap();
    assert_eq!(m.dim(), 16);
    // so*(8): dim 2r(4r-1) = 28
    let m = matrix_model(&Algebra::new(Family::HermH, 2).unwrap()).unwrap();
    assert_eq!(m.dim(), 28);
    // doubled sp_4(R)
    let m =
        matrix_model(&Algebra::new(Family::DirectSum(Box::new(Family::SymR)), 2).unwrap())
            .unwrap();
    assert_eq!(m.dim(), 20);
}

#[test]
fn h_is_euler_with_unit_eigenvalues() {
    for alg in model_algebras() {
        let model = matrix_model(&alg).unwrap();
        let h = model.euler().h.clone();
        let ad = model.ad_matrix(&h).unwrap();
        let eig = linalg::complex_eigenvalues(&ad);
        for l in &eig {
            assert!(l.im.abs() < 1e-7);
            let re = l.re;
            let near = (re + 1.0).abs().min(re.abs()).min((re - 1.0).abs());
            assert!(near < 1e-7, "ad(h) eigenvalue {re} on {:?}", alg);
        }
        // dim g_1(h) = dim V: count eigenvalues near +1
        let ones = eig.iter().filter(|l| (l.re - 1.0).abs() < 1e-7).count();
        assert_eq!(ones, alg.dim());
    }
}

#[test]
fn sp2_euler_elements_are_the_classical_matrices() {
    // sl_2 = sp_2(R): h = diag(1,-1)/2, e = [[0,1],[0,0]],
    // z_k = [[0,1],[-1,0]]/2, k = [[0,1],[1,0]]/2
    let alg = Algebra::new(Family::SymR, 1).unwrap();
    let model = matrix_model(&alg).unwrap();
    let eu = model.euler();
    let expect = |s: &[f64]| DMatrix::from_row_slice(2, 2, s);
    assert!((eu.h.clone() - expect(&[0.5, 0.0, 0.0, -0.5])).abs().max() < 1e-12);
    assert!((eu.e.clone() - expect(&[0.0, 1.0, 0.0, 0.0])).abs().max() < 1e-12);
    assert!((eu.zk.clone() - expect(&[0.0, 0.5, -0.5, 0.0])).abs().max() < 1e-12);
    assert!((eu.k.clone() - expect(&[0.0, 0.5, 0.5, 0.0])).abs().max() < 1e-10);
}

#[test]
fn hef_bracket_relations() {
    for alg in model_algebras() {
        let model = matrix_model(&alg).unwrap();
        let eu = model.euler();
        let br = |a: &DMatrix<f64>, b: &DMatrix<f64>| a * b - b * a;
        assert!((br(&eu.e, &eu.f) - &eu.h).abs().max() < 1e-10);
        assert!((br(&eu.h, &eu.e) - &eu.e).abs().max() < 1e-10);
        assert!((br(&eu.h, &eu.f) + &eu.f).abs().max() < 1e-10);
    }
}

#[test]
fn bracket_formula_reproduces_jordan_product() {
    // [[x, f], y] on g_1(h) is the Jordan product
    for alg in model_algebras() {
        let model = matrix_model(&alg).unwrap();
        let f = model.euler().f.clone();
        for i in 0..100u64 {
            let mut rng = rng_for(40 + alg.dim() as u64, i);
            let x = alg.random_element(&mut rng);
            let y = alg.random_element(&mut rng);
            let xl = model.embed_v(&x).unwrap();
            let yl = model.embed_v(&y).unwrap();
            let xf = &xl.mat * &f - &f * &xl.mat;
            let res = &xf * &yl.mat - &yl.mat * &xf;
            let back = model.pullback_v_mat(&res).unwrap();
            let prod = x.product(&y).unwrap();
            assert!(
                (back - prod.coords).norm() < 1e-8 * (1.0 + x.coord_norm() * y.coord_norm()),
                "bracket formula failed on {:?}",
                alg
            );
        }
    }
}

#[test]
fn grading_suite_hj_kj() {
    // ad(h^j), ad(k^j) have spectrum in {-1,0,1}; h^0 = h, h^r = -h
    for alg in model_algebras() {
        let model = matrix_model(&alg).unwrap();
        let eu = model.euler();
        let r = alg.rank();
        assert!((eu.h_j(0).unwrap() - &eu.h).abs().max() < 1e-9);
        assert!((eu.h_j(r).unwrap() + &eu.h).abs().max() < 1e-9);
        assert!(eu.h_j(r + 1).is_err());
        for j in 0..=r {
            for m in [eu.h_j(j).unwrap(), eu.k_j(j).unwrap()] {
                let ad = model.ad_matrix(&m).unwrap();
                for l in linalg::complex_eigenvalues(&ad) {
                    assert!(l.im.abs() < 1e-7);
                    let near =
                        (l.re + 1.0).abs().min(l.re.abs()).min((l.re - 1.0).abs());
                    assert!(near < 1e-7, "ad spectrum off for j={j} on {:?}", alg);
                }
            }
        }
        // k = k^0
        assert!((eu.k_j(0).unwrap() - &eu.k).abs().max() < 1e-9);
    }
}

#[test]
fn grade_projection_splits_correctly() {
    for alg in model_algebras() {
        let model = matrix_model(&alg).unwrap();
        let eu = model.euler();
        let h = model.matrix(eu.h.clone()).unwrap();
        // grade_project(h, h) = (0, h, 0)
        let (m, z, p) = grade_project(&h, &h).unwrap();
        assert!(m.mat.abs().max() < 1e-10 && p.mat.abs().max() < 1e-10);
        assert!((z.mat - &eu.h).abs().max() < 1e-10);
        // translations sit in g_1, their theta-images in g_{-1}
        let mut rng = rng_for(50, alg.dim() as u64);
        let v = alg.random_element(&mut rng);
        let xv = model.embed_v(&v).unwrap();
        let (m, z, p) = grade_project(&xv, &h).unwrap();
        assert!(m.mat.abs().max() < 1e-10 && z.mat.abs().max() < 1e-10);
        assert!((p.mat - &xv.mat).abs().max() < 1e-10);
        let th = model.matrix(model.cartan_theta(&xv.mat)).unwrap();
        let (m, z, p) = grade_project(&th, &h).unwrap();
        assert!(p.mat.abs().max() < 1e-10 && z.mat.abs().max() < 1e-10);
        assert!((m.mat - &th.mat).abs().max() < 1e-10);
        // components sum back
        let mut x = model.from_coords(&nalgebra::DVector::from_fn(model.dim(), |i, _| {
            ((i * 7 + 3) % 5) as f64 - 2.0
        }));
        x.iter_mut().for_each(|v| *v *= 0.1);
        let xm = model.matrix(x.clone()).unwrap();
        let (a, b, c) = grade_project(&xm, &h).unwrap();
        assert!(((a.mat + b.mat + c.mat) - x).abs().max() < 1e-8);
    }
}

#[test]
fn pierce_dimensions_add_up() {
    // dim V_1 + dim V_0 + dim V_{-1} = dim V, and the +-1 spaces are
    // Jordan subalgebras (closed under the product)
    for alg in model_algebras() {
        let r = alg.rank();
        for j in 0..=r {
            let mut rng = rng_for(60, (alg.dim() + j) as u64);
            // projection ranks via random probes
            let model = matrix_model(&alg).unwrap();
            let hj = model.euler().h_j(j).unwrap();
            let n = alg.dim();
            let mut dmat = DMatrix::zeros(n, n);
            for b in 0..n {
                let xb = model.embed_v_mat(&alg.basis_element(b).coords);
                let br = &hj * &xb - &xb * &hj;
                dmat.set_column(b, &model.pullback_v_mat(&br).unwrap());
            }
            let d2 = &dmat * &dmat;
            let p1 = 0.5 * (&d2 + &dmat);
            let p0 = DMatrix::identity(n, n) - &d2;
            let pm = 0.5 * (&d2 - &dmat);
            let d1 = p1.trace().round() as usize;
            let d0 = p0.trace().round() as usize;
            let dm = pm.trace().round() as usize;
            assert_eq!(d1 + d0 + dm, n);
            // subalgebra property for the +-1 parts
            for _ in 0..20 {
                let x = alg.random_element(&mut rng);
                let y = alg.random_element(&mut rng);
                for p in [&p1, &pm] {
                    let xe = alg.element(p * &x.coords).unwrap();
                    let ye = alg.element(p * &y.coords).unwrap();
                    let prod = xe.product(&ye).unwrap();
                    let proj = alg.element(p * &prod.coords).unwrap();
                    assert!(prod.approx_eq(&proj, 1e-8 * (1.0 + prod.coord_norm())));
                }
            }
        }
    }
}

#[test]
fn wedge_examples() {
    // j = 0: the open cone; Rindler on Minkowski; 0 never a member
    for alg in model_algebras() {
        let mut rng = rng_for(70, alg.dim() as u64);
        for _ in 0..20 {
            let x = alg.random_element(&mut rng);
            assert_eq!(wedge_membership_hj(&x, 0).unwrap(), x.in_open_cone());
        }
        for j in 0..=alg.rank() {
            assert!(!wedge_membership_hj(&alg.zero(), j).unwrap());
        }
    }
    let mink = Algebra::new(Family::SpinFactor, 4).unwrap();
    let e1 = mink.element_from(&[0.0, 1.0, 0.0, 0.0]).unwrap();
    let e0 = mink.unit();
    assert!(wedge_membership_hj(&e1, 1).unwrap(), "e1 is in the Rindler wedge");
    assert!(!wedge_membership_hj(&e0, 1).unwrap(), "e0 is not");
    // x1 > |x0| characterisation on random samples
    let mut rng = rng_for(71, 0);
    for _ in 0..200 {
        let x = mink.random_element(&mut rng);
        let expect = x.coords[1] > x.coords[0].abs();
        assert_eq!(wedge_membership_hj(&x, 1).unwrap(), expect);
    }
}

#[test]
fn wedge_routes_agree() {
    // eigenspace route vs bracket route on 500 samples
    for alg in model_algebras() {
        let r = alg.rank();
        for i in 0..(500 / model_algebras().len() as u64 + 1) {
            let mut rng = rng_for(80 + alg.dim() as u64, i);
            let x = alg.random_element(&mut rng);
            for j in 0..=r {
                assert_eq!(
                    wedge_membership_hj(&x, j).unwrap(),
                    wedge_bracket_test(&x, j).unwrap(),
                    "routes disagree on {:?} j={j}",
                    alg
                );
            }
        }
    }
}

#[test]
fn wedge_members_have_satellite_signature() {
    // members of W(h^j) have signature (r-j, j)
    for alg in [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::SymR, 3).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ] {
        let r = alg.rank();
        let frame = alg.standard_frame();
        for j in 0..=r {
            for i in 0..60u64 {
                let mut rng = rng_for(90 + j as u64, i);
                // sample inside the wedge: positive part + negative part + free part
                let mut x = alg.zero();
                for (idx, c) in frame.iter().enumerate() {
                    let mag = rng.random_range(0.2..2.0);
                    let sign = if idx < r - j { 1.0 } else { -1.0 };
                    x.coords += sign * mag * &c.coords;
                }
                // keep it strictly inside by construction; check membership and signature
                assert!(wedge_membership_hj(&x, j).unwrap());
                let sig = x.signature();
                assert_eq!((sig.p, sig.q), (r - j, j));
            }
        }
    }
}

#[test]
fn spectrum_classification_elliptic_hyperbolic() {
    for alg in model_algebras() {
        let model = matrix_model(&alg).unwrap();
        let eu = model.euler();
        // z_k generates rotations
        let zk = model.matrix(eu.zk.clone()).unwrap();
        assert_eq!(ad_spectrum_class(&zk).unwrap(), SpectrumClass::Elliptic);
        // e - theta(e) = 2k is hyperbolic, e + theta(e) = 2 z_k elliptic
        let em = model
            .matrix(&eu.e - model.cartan_theta(&eu.e))
            .unwrap();
        assert_eq!(ad_spectrum_class(&em).unwrap(), SpectrumClass::Hyperbolic);
        let ep = model.matrix(&eu.e + model.cartan_theta(&eu.e)).unwrap();
        assert_eq!(ad_spectrum_class(&ep).unwrap(), SpectrumClass::Elliptic);
        // h itself is hyperbolic
        let h = model.matrix(eu.h.clone()).unwrap();
        assert_eq!(ad_spectrum_class(&h).unwrap(), SpectrumClass::Hyperbolic);
        // mixed element: commuting hyperbolic and elliptic parts living in
        // different frame slots (needs rank >= 2)
        if alg.rank() >= 2 {
            let mix = model.matrix(&eu.h_i[0] + &eu.zk_i[1]).unwrap();
            let class = ad_spectrum_class(&mix).unwrap();
            assert!(
                class == SpectrumClass::Mixed,
                "h_1 + z_k_2 should be mixed, got {class} on {:?}",
                alg
            );
        }
        // a nilpotent: e itself (ad e is nilpotent, nonzero)
        let e = model.matrix(eu.e.clone()).unwrap();
        assert_eq!(
            ad_spectrum_class(&e).unwrap(),
            SpectrumClass::NilpotentContaminated
        );
    }
}

#[test]
fn invertibility_bracket_criterion() {
    // x invertible iff h lies in [X_x, g_{-1}(h)]
    for alg in [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ] {
        let model = matrix_model(&alg).unwrap();
        let eu = model.euler();
        let n = alg.dim();
        for i in 0..200u64 {
            let mut rng = rng_for(100 + alg.dim() as u64, i);
            // mix invertible and singular samples
            let x = if i % 2 == 0 {
                alg.random_element(&mut rng)
            } else {
                // force a kernel direction: x = sum over a strict subset of a frame
                let f = alg.random_frame(&mut rng);
                let mut x = alg.zero();
                for c in f.iter().take(alg.rank() - 1) {
                    x.coords += rng.random_range(0.5..1.5) * &c.coords;
                }
                x
            };
            let xl = model.embed_v(&x).unwrap();
            // span of [X_x, theta(X_b)] over the basis b of V
            let mut span = DMatrix::zeros(model.size() * model.size(), n);
            for b in 0..n {
                let yb = model.cartan_theta(&model.embed_v_mat(&alg.basis_element(b).coords));
                let br = &xl.mat * &yb - &yb * &xl.mat;
                span.set_column(b, &linalg::vectorize(&br));
            }
            let hvec = linalg::vectorize(&eu.h);
            let rank_without = linalg::rank(&span, 1e-9);
            let mut augmented = DMatrix::zeros(model.size() * model.size(), n + 1);
            augmented.view_mut((0, 0), (model.size() * model.size(), n)).copy_from(&span);
            augmented.set_column(n, &hvec);
            let rank_with = linalg::rank(&augmented, 1e-9);
            let h_in_image = rank_with == rank_without;
            let invertible = x.inverse().is_some();
            assert_eq!(h_in_image, invertible, "bracket criterion failed on {:?}", alg);
        }
    }
}

#[test]
fn orientation_signs_match_the_component_representatives() {
    // so_{2,d}: g = r_12(pi) r_{3,d+2}(pi) has det_V = (-1)^d
    for d in 3..=6 {
        let alg = Algebra::new(Family::SpinFactor, d).unwrap();
        let model = matrix_model(&alg).unwrap();
        let s = d + 2;
        let mut g = DMatrix::identity(s, s);
        // rotation by pi in the (e1,e2)-plane (indices 0,1) and in the
        // (e3, e_{d+2})-plane (indices 2, d+1)
        g[(0, 0)] = -1.0;
        g[(1, 1)] = -1.0;
        g[(2, 2)] = -1.0;
        g[(d + 1, d + 1)] = -1.0;
        let sign = orientation_sign(&model, &g).unwrap();
        let expect = if d % 2 == 1 { -1 } else { 1 };
        assert_eq!(sign, expect, "so(2,{d}) orientation sign");
    }
    // sp_{2r}: g = diag(-1,1,...,1,-1,1,...,1) has det_V = (-1)^{r-1}
    for r in 2..=4 {
        let alg = Algebra::new(Family::SymR, r).unwrap();
        let model = matrix_model(&alg).unwrap();
        let s = 2 * r;
        let mut g = DMatrix::identity(s, s);
        g[(0, 0)] = -1.0;
        g[(r, r)] = -1.0;
        let sign = orientation_sign(&model, &g).unwrap();
        let expect = if r % 2 == 0 { -1 } else { 1 };
        assert_eq!(sign, expect, "sp_{} orientation sign", 2 * r);
    }
    // identity always +1
    for alg in model_algebras() {
        let model = matrix_model(&alg).unwrap();
        let id = DMatrix::identity(model.size(), model.size());
        assert_eq!(orientation_sign(&model, &id).unwrap(), 1);
    }
}

#[test]
fn non_normalizing_and_non_group_rejected() {
    let alg = Algebra::new(Family::SymR, 2).unwrap();
    let model = matrix_model(&alg).unwrap();
    // a group element that does not normalize g_1(h): exp(z_k)
    let g = linalg::expm(&model.euler().zk);
    assert!(matches!(
        orientation_sign(&model, &g),
        Err(causalflag::Error::NotNormalizing)
    ));
    // not a group element at all
    let mut bad = DMatrix::identity(model.size(), model.size());
    bad[(0, 0)] = 2.0;
    assert!(matches!(
        orientation_sign(&model, &bad),
        Err(causalflag::Error::NonGroupMatrix(_))
    ));
}

#[test]
fn lie_matrix_json_roundtrip() {
    let alg = Algebra::new(Family::HermC, 2).unwrap();
    let model = matrix_model(&alg).unwrap();
    let x = model.matrix(model.euler().h.clone()).unwrap();
    let s = serde_json::to_string(&x).unwrap();
    assert!(s.contains("\"model\"") && s.contains("\"mat\""));
    let back: causalflag::lie::LieMatrix = serde_json::from_str(&s).unwrap();
    assert!(back.approx_eq(&x, 1e-12));
}
