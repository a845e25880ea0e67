//! Conformal completion tests: embeddings, charts, generator actions and
//! Cayley transforms.

use causalflag::conformal::{
    apply_generator, cayley_real, cayley_real_inv, chart_pullback, embed_point, transversal,
    CompletionPoint, ConformalGenerator, PointRep,
};
use causalflag::jordan::{Algebra, Family};
use causalflag::lie::matrix_model;
use causalflag::par::rng_for;
use nalgebra::DVector;
use rand::Rng;

fn point_algebras() -> Vec<Algebra> {
    vec![
        Algebra::new(Family::SymR, 1).unwrap(),
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::HermH, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 3).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ]
}

#[test]
fn embedding_examples() {
    // eta(0) = [1 : 0 : -1] in the spin model
    let sp = Algebra::new(Family::SpinFactor, 4).unwrap();
    let p = embed_point(&sp.zero()).unwrap();
    let PointRep::QuadricRay(ray) = &p.rep else { panic!() };
    let expect = DVector::from_column_slice(&[0.5, 0.0, 0.0, 0.0, 0.0, -0.5]);
    assert!((ray - expect).norm() < 1e-12);

    // matrix family r = 1 over R: Gamma(3) = span(3, 1), pullback 3
    let r1 = Algebra::new(Family::SymR, 1).unwrap();
    let x = r1.element_from(&[3.0]).unwrap();
    let p = embed_point(&x).unwrap();
    let PointRep::IsotropicSubspace(b) = &p.rep else { panic!() };
    assert!((b[(0, 0)] / b[(1, 0)] - 3.0).abs() < 1e-12);
    let back = chart_pullback(&p).unwrap().unwrap();
    assert!(back.approx_eq(&x, 1e-12));
}

#[test]
fn pullback_roundtrip_and_infinity() {
    for alg in point_algebras() {
        for i in 0..50u64 {
            let mut rng = rng_for(200 + alg.dim() as u64, i);
            let v = alg.random_element(&mut rng);
            let p = embed_point(&v).unwrap();
            p.validate().unwrap();
            let back = chart_pullback(&p).unwrap().unwrap();
            assert!(back.approx_eq(&v, 1e-8 * (1.0 + v.coord_norm())));
        }
    }
    // the spin chart boundary is the locus x_1 = x_{d+2}: rays (1, v, 1)
    // with lightlike v
    let sp = Algebra::new(Family::SpinFactor, 4).unwrap();
    let model = matrix_model(&sp).unwrap();
    let ray = DVector::from_column_slice(&[1.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
    let p = CompletionPoint { model, rep: PointRep::QuadricRay(ray) };
    p.validate().unwrap();
    assert!(chart_pullback(&p).unwrap().is_none());

    // [0 : v : 1] with beta(v,v) = 1 is inside the chart and equals
    // eta(-v); both classifications must agree
    let v = sp.element_from(&[0.0, 0.0, 0.0, 1.0]).unwrap();
    // beta(v,v) = -1 for a spatial unit vector; use timelike unit instead
    let u = sp.element_from(&[1.0, 0.0, 0.0, 0.0]).unwrap();
    let _ = v;
    let model = matrix_model(&sp).unwrap();
    let mut ray = DVector::zeros(6);
    ray[1] = 1.0; // v = e0
    ray[5] = 1.0;
    let p = CompletionPoint { model, rep: PointRep::QuadricRay(ray) };
    p.validate().unwrap();
    let back = chart_pullback(&p).unwrap().unwrap();
    assert!(back.approx_eq(&u.scale(-1.0), 1e-12));
    assert!(p.point_eq(&embed_point(&u.scale(-1.0)).unwrap(), 1e-9));

    // matrix model: the infinity point Gamma(infinity) = E_+ has a
    // singular bottom block
    let s1 = Algebra::new(Family::SymR, 2).unwrap();
    let m = matrix_model(&s1).unwrap();
    let mut b = nalgebra::DMatrix::zeros(4, 2);
    b[(0, 0)] = 1.0;
    b[(1, 1)] = 1.0;
    let p = CompletionPoint { model: m, rep: PointRep::IsotropicSubspace(b) };
    p.validate().unwrap();
    assert!(chart_pullback(&p).unwrap().is_none());
}

#[test]
fn dilation_flow_law() {
    // exp(t h).eta(v) = eta(e^t v)
    for alg in point_algebras() {
        for i in 0..30u64 {
            let mut rng = rng_for(210 + alg.dim() as u64, i);
            let v = alg.random_element(&mut rng);
            let t = rng.random_range(-1.5..1.5);
            let lhs = apply_generator(&ConformalGenerator::Dilate(t), &embed_point(&v).unwrap())
                .unwrap();
            let rhs = embed_point(&v.scale(t.exp())).unwrap();
            assert!(lhs.point_eq(&rhs, 1e-7), "flow law failed on {:?}", alg);
        }
    }
}

#[test]
fn translations_act_by_addition() {
    for alg in point_algebras() {
        let mut rng = rng_for(220, alg.dim() as u64);
        for _ in 0..20 {
            let v = alg.random_element(&mut rng);
            let w = alg.random_element(&mut rng);
            let p = apply_generator(
                &ConformalGenerator::Translate(w.clone()),
                &embed_point(&v).unwrap(),
            )
            .unwrap();
            let rhs = embed_point(&v.add(&w).unwrap()).unwrap();
            assert!(p.point_eq(&rhs, 1e-7));
        }
    }
}

#[test]
fn inversion_is_minus_inverse() {
    for alg in point_algebras() {
        // eta(e) -> eta(-e)
        let e = alg.unit();
        let p = apply_generator(&ConformalGenerator::Inversion, &embed_point(&e).unwrap())
            .unwrap();
        assert!(p.point_eq(&embed_point(&e.scale(-1.0)).unwrap(), 1e-7));
        // random invertible points
        let mut rng = rng_for(230, alg.dim() as u64);
        for _ in 0..20 {
            let x = alg.random_signature_element(&mut rng, alg.rank() / 2, 0.4, 1.6);
            let inv = x.inverse().unwrap();
            let p = apply_generator(&ConformalGenerator::Inversion, &embed_point(&x).unwrap())
                .unwrap();
            assert!(p.point_eq(&embed_point(&inv.scale(-1.0)).unwrap(), 1e-6));
        }
    }
}

#[test]
fn rho_pi_is_the_inversion_and_rho_half_pi_is_cayley() {
    use std::f64::consts::PI;
    for alg in point_algebras() {
        let mut rng = rng_for(240, alg.dim() as u64);
        for _ in 0..15 {
            let x = alg.random_ball_element(&mut rng, 0.8);
            let p = embed_point(&x).unwrap();
            let moved = apply_generator(&ConformalGenerator::MoebiusRho(PI), &p).unwrap();
            let inv = apply_generator(&ConformalGenerator::Inversion, &p).unwrap();
            assert!(moved.point_eq(&inv, 1e-7));
            // rho(pi/2) agrees with the spectral Cayley transform
            let half = apply_generator(&ConformalGenerator::MoebiusRho(PI / 2.0), &p).unwrap();
            if let Some(c) = cayley_real(&x) {
                assert!(half.point_eq(&embed_point(&c).unwrap(), 1e-6));
            }
        }
        // c(0) = e through the flow
        let z = embed_point(&alg.zero()).unwrap();
        let half = apply_generator(&ConformalGenerator::MoebiusRho(PI / 2.0), &z).unwrap();
        assert!(half.point_eq(&embed_point(&alg.unit()).unwrap(), 1e-7));
    }
}

#[test]
fn cayley_scalar_values_and_involution_property() {
    // rank-1: c(1/3) = (4/3)/(2/3) = 2
    let r1 = Algebra::new(Family::SymR, 1).unwrap();
    let c = cayley_real(&r1.element_from(&[1.0 / 3.0]).unwrap()).unwrap();
    assert!((c.coords[0] - 2.0).abs() < 1e-12);
    // c(0) = e
    for alg in point_algebras() {
        let c0 = cayley_real(&alg.zero()).unwrap();
        assert!(c0.approx_eq(&alg.unit(), 1e-12));
    }
    // c(c(x)) = -x^{-1} on 100 random samples avoiding eigenvalues +-1
    let mut done = 0;
    let mut tries = 0u64;
    let algs = point_algebras();
    while done < 100 && tries < 2000 {
        let alg = &algs[(tries % algs.len() as u64) as usize];
        let mut rng = rng_for(250, tries);
        tries += 1;
        let x = alg.random_element(&mut rng);
        let margin = x
            .spectral()
            .unwrap()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |m, &l| m.min((l - 1.0).abs()).min((l + 1.0).abs()).min(l.abs()));
        if margin < 0.1 {
            continue;
        }
        let cc = cayley_real(&cayley_real(&x).unwrap()).unwrap();
        let expect = x.inverse().unwrap().scale(-1.0);
        assert!(cc.approx_eq(&expect, 1e-7 * (1.0 + expect.coord_norm())));
        done += 1;
    }
    assert_eq!(done, 100);
}

#[test]
fn cayley_maps_cone_to_unit_ball() {
    // c^{-1}(V_+) is the open unit ball
    for alg in point_algebras() {
        for i in 0..200u64 {
            let mut rng = rng_for(260 + alg.dim() as u64, i);
            let v = alg.random_cone_element(&mut rng, 0.05, 4.0);
            let w = cayley_real_inv(&v).unwrap();
            assert!(w.in_unit_ball(), "c^{{-1}} left the ball on {:?}", alg);
            // and back
            let v2 = cayley_real(&w).unwrap();
            assert!(v2.approx_eq(&v, 1e-7 * (1.0 + v.coord_norm())));
        }
    }
}

#[test]
fn transversality_examples() {
    for alg in point_algebras() {
        let zero = embed_point(&alg.zero()).unwrap();
        let e = embed_point(&alg.unit()).unwrap();
        assert!(transversal(&zero, &e).unwrap());
        assert!(!transversal(&zero, &zero).unwrap());
        assert!(!transversal(&e, &e).unwrap());
    }
    // rank 2: c_1 is not invertible, so (eta(0), eta(c_1)) fails
    for alg in [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ] {
        let c1 = &alg.standard_frame()[0];
        let zero = embed_point(&alg.zero()).unwrap();
        let p = embed_point(c1).unwrap();
        assert!(!transversal(&zero, &p).unwrap());
        // chart criterion: x - y invertible
        let mut rng = rng_for(270, alg.dim() as u64);
        for _ in 0..50 {
            let x = alg.random_element(&mut rng);
            let y = alg.random_element(&mut rng);
            let tr = transversal(&embed_point(&x).unwrap(), &embed_point(&y).unwrap()).unwrap();
            let inv = x.sub(&y).unwrap().inverse().is_some();
            assert_eq!(tr, inv);
        }
    }
}

#[test]
fn group_action_composition() {
    // (g1 g2).p = g1.(g2.p) for matrix-kind generators
    for alg in point_algebras() {
        let model = matrix_model(&alg).unwrap();
        for i in 0..(200 / point_algebras().len() as u64 + 1) {
            let mut rng = rng_for(280 + alg.dim() as u64, i);
            // group elements via exponentials of random algebra elements
            let mut rand_group = || {
                let c = DVector::from_iterator(
                    model.dim(),
                    (0..model.dim()).map(|_| rng.random_range(-0.3..0.3)),
                );
                causalflag::linalg::expm(&model.from_coords(&c))
            };
            let g1 = rand_group();
            let g2 = rand_group();
            let v = alg.random_element(&mut rng);
            let p = embed_point(&v).unwrap();
            let lhs = apply_generator(
                &ConformalGenerator::Matrix(model.matrix(&g1 * &g2).unwrap()),
                &p,
            )
            .unwrap();
            let step = apply_generator(
                &ConformalGenerator::Matrix(model.matrix(g2.clone()).unwrap()),
                &p,
            )
            .unwrap();
            let rhs = apply_generator(
                &ConformalGenerator::Matrix(model.matrix(g1.clone()).unwrap()),
                &step,
            )
            .unwrap();
            assert!(lhs.point_eq(&rhs, 1e-6), "action composition failed on {:?}", alg);
            lhs.validate().unwrap();
        }
    }
}

#[test]
fn non_group_matrices_rejected() {
    let alg = Algebra::new(Family::SymR, 2).unwrap();
    let model = matrix_model(&alg).unwrap();
    let mut bad = nalgebra::DMatrix::identity(4, 4);
    bad[(0, 0)] = 3.0;
    let p = embed_point(&alg.zero()).unwrap();
    let res = apply_generator(
        &ConformalGenerator::Matrix(model.matrix(bad).unwrap()),
        &p,
    );
    assert!(matches!(res, Err(causalflag::Error::NonGroupMatrix(_))));
}

#[test]
fn completion_point_json_roundtrip() {
    for alg in [
        Algebra::new(Family::SpinFactor, 4).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
    ] {
        let mut rng = rng_for(290, alg.dim() as u64);
        let v = alg.random_element(&mut rng);
        let p = embed_point(&v).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"rep\""));
        let back: CompletionPoint = serde_json::from_str(&s).unwrap();
        assert!(back.point_eq(&p, 1e-10));
    }
}
