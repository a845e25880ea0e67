//! Makarevic-space tests: involution catalog, fixed algebras, cone
//! classification, Bergman membership, satellites, partial Cayley maps
//! and the modularity classification.

use causalflag::conformal::embed_point;
use causalflag::jordan::{Algebra, Family};
use causalflag::lie::{wedge_membership_hj, SpectrumClass};
use causalflag::par::rng_for;
use causalflag::spaces::{
    catalog, cone_classification, fixed_algebra, flip_wedge_membership, make_involution,
    makarevic_membership, modularity_check, partial_cayley_dj, tables, InvolutionKind,
};
use nalgebra::DMatrix;
use rand::Rng;

#[test]
fn involution_examples() {
    // Pierce(0) is the identity
    let s3 = Algebra::new(Family::SymR, 3).unwrap();
    let spec = make_involution(&s3, InvolutionKind::Pierce(0)).unwrap();
    assert!((spec.v_matrix.clone() - DMatrix::identity(6, 6)).abs().max() < 1e-12);

    // the Minkowski Pierce involution alpha_1 = diag(1,1,-1,...,-1)
    let mink = Algebra::new(Family::SpinFactor, 5).unwrap();
    let spec = make_involution(&mink, InvolutionKind::Pierce(1)).unwrap();
    let mut expect = DMatrix::identity(5, 5);
    for k in 2..5 {
        expect[(k, k)] = -1.0;
    }
    assert!((spec.v_matrix.clone() - expect).abs().max() < 1e-12);

    // S1 on Herm_r(C): fixed set Sym_r(R) of dimension r(r+1)/2
    for r in 1..=3 {
        let alg = Algebra::new(Family::HermC, r).unwrap();
        let spec = make_involution(&alg, InvolutionKind::SplitS1).unwrap();
        assert_eq!(spec.v_fixed_dim(), r * (r + 1) / 2);
    }

    // incompatible kinds
    let s3 = Algebra::new(Family::SymR, 3).unwrap();
    assert!(make_involution(&s3, InvolutionKind::NonSplitNS1).is_err());
    assert!(make_involution(&s3, InvolutionKind::SplitS1).is_err());
    assert!(make_involution(&mink, InvolutionKind::Flip).is_err());
}

#[test]
fn pierce_sign_pattern() {
    // alpha_j acts by +1 on V_{kl} for k,l on the same side of the split
    // r-j | j and by -1 across it
    for alg in [
        Algebra::new(Family::SymR, 3).unwrap(),
        Algebra::new(Family::HermC, 3).unwrap(),
        Algebra::new(Family::HermH, 2).unwrap(),
    ] {
        let r = alg.rank();
        let frame = alg.standard_frame();
        for j in 0..=r {
            let spec = make_involution(&alg, InvolutionKind::Pierce(j)).unwrap();
            let mut rng = rng_for(400, j as u64);
            for _ in 0..20 {
                let x = alg.random_element(&mut rng);
                // project to V_{kl} via the frame multiplication operators:
                // V_{kl} = {v : c_k v = c_l v = v/2}
                for k in 0..r {
                    for l in (k + 1)..r {
                        let lk = frame[k].l_operator();
                        let ll = frame[l].l_operator();
                        // joint 1/2-eigenprojection via 4 L_k L_l
                        let proj = 4.0 * (&lk * &ll);
                        let xkl = alg.element(&proj * &x.coords).unwrap();
                        let img = spec.apply_v(&xkl).unwrap();
                        let expect_sign =
                            if (k < r - j) == (l < r - j) { 1.0 } else { -1.0 };
                        assert!(
                            img.approx_eq(&xkl.scale(expect_sign), 1e-8 * (1.0 + xkl.coord_norm())),
                            "pierce sign pattern failed on {:?}, j={j}, kl=({k},{l})",
                            alg
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn sigma_commutes_with_grading_and_restricts_to_alpha() {
    let algs = [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::HermH, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ];
    for alg in algs {
        for kind in catalog(&alg) {
            let spec = make_involution(&alg, kind).unwrap();
            let model = spec.model().clone();
            let mut rng = rng_for(410, alg.dim() as u64);
            for _ in 0..100 {
                let v = alg.random_element(&mut rng);
                let xv = model.embed_v(&v).unwrap();
                let img = spec.sigma(&xv.mat);
                // stays in g_1 and agrees with alpha on V
                let back = model.pullback_v_mat(&img).unwrap();
                let av = spec.apply_v(&v).unwrap();
                assert!((back - av.coords).norm() < 1e-8 * (1.0 + v.coord_norm()));
            }
        }
    }
}

#[test]
fn theta_composition_is_tau_h() {
    let algs = [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ];
    for alg in algs {
        for kind in catalog(&alg) {
            let spec = make_involution(&alg, kind).unwrap();
            let model = spec.model().clone();
            for b in model.basis() {
                let lhs = spec.theta_alpha(&spec.theta_minus_alpha(&b.mat));
                let rhs = model.tau_h(&b.mat);
                assert!(
                    (lhs - rhs).abs().max() < 1e-9 * (1.0 + b.mat.abs().max()),
                    "theta_alpha . theta_-alpha != tau_h for {kind} on {:?}",
                    alg
                );
            }
        }
    }
}

#[test]
fn fixed_algebra_dimensions() {
    // alpha = id: the fixed algebra of theta is the maximal compact
    let s2 = Algebra::new(Family::SymR, 2).unwrap();
    let spec = make_involution(&s2, InvolutionKind::Identity).unwrap();
    let rep = fixed_algebra(&spec, 1).unwrap();
    assert_eq!(rep.dim, 4); // u(2) inside sp_4(R)
    assert_eq!(rep.q_part_dim, s2.dim());

    // Minkowski NS3 (j = d-1): dim g^{(-alpha)} = dim so_{1,d}
    for d in 3..=5 {
        let mink = Algebra::new(Family::SpinFactor, d).unwrap();
        let spec = make_involution(&mink, InvolutionKind::MinkowskiReflection(d - 1)).unwrap();
        let rep = fixed_algebra(&spec, -1).unwrap();
        assert_eq!(rep.dim, (d + 1) * d / 2, "so(1,{d}) dimension");
    }

    // Herm_{2s}(C), Pierce(s): the u(Omega)-model fixed algebra is
    // (u_{s,s} + u_{s,s})/R plus the fixed central line, total 2 r^2
    for s in 1..=2usize {
        let r = 2 * s;
        let alg = Algebra::new(Family::HermC, r).unwrap();
        let spec = make_involution(&alg, InvolutionKind::Pierce(s)).unwrap();
        let rep = fixed_algebra(&spec, 1).unwrap();
        let su_model_value = 2 * (4 * s * s) - 1; // dim(u_{s,s}^2) - 1
        assert_eq!(rep.dim, su_model_value + 1);
        assert_eq!(rep.dim, 2 * r * r);
    }

    // c-duality: dims agree for both signs across the catalog
    for alg in [
        Algebra::new(Family::SymR, 3).unwrap(),
        Algebra::new(Family::HermH, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 5).unwrap(),
    ] {
        for kind in catalog(&alg) {
            let spec = make_involution(&alg, kind).unwrap();
            let p = fixed_algebra(&spec, 1).unwrap();
            let m = fixed_algebra(&spec, -1).unwrap();
            assert_eq!(p.dim, m.dim, "c-duality failed for {kind} on {:?}", alg);
            assert_eq!(p.q_part_dim, alg.dim());
            assert_eq!(m.q_part_dim, alg.dim());
            // basis elements satisfy the fixed-point equation
            for b in p.basis.iter().take(3) {
                let img = spec.theta_alpha(&b.mat);
                assert!((img - &b.mat).abs().max() < 1e-7);
            }
        }
    }
}

#[test]
fn cone_classification_uniform_verdicts() {
    // elliptic for +, hyperbolic for -, across the catalog at small rank
    for alg in [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::HermH, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ] {
        for kind in catalog(&alg) {
            let spec = make_involution(&alg, kind).unwrap();
            let plus = cone_classification(&spec, 1, 25, 4242).unwrap();
            assert_eq!(
                plus.verdict,
                SpectrumClass::Elliptic,
                "+ cone not elliptic for {kind} on {:?}",
                alg
            );
            let minus = cone_classification(&spec, -1, 25, 4242).unwrap();
            assert_eq!(
                minus.verdict,
                SpectrumClass::Hyperbolic,
                "- cone not hyperbolic for {kind} on {:?}",
                alg
            );
        }
    }
    // flip involution on a doubled algebra
    let dbl = Algebra::direct_sum(&Algebra::new(Family::SymR, 2).unwrap()).unwrap();
    let spec = make_involution(&dbl, InvolutionKind::Flip).unwrap();
    assert_eq!(cone_classification(&spec, 1, 25, 7).unwrap().verdict, SpectrumClass::Elliptic);
    assert_eq!(
        cone_classification(&spec, -1, 25, 7).unwrap().verdict,
        SpectrumClass::Hyperbolic
    );
}

#[test]
fn bergman_membership_examples() {
    // unit-ball points are members for every cataloged involution
    for alg in [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ] {
        for kind in catalog(&alg) {
            let spec = make_involution(&alg, kind).unwrap();
            for i in 0..50u64 {
                let mut rng = rng_for(420 + alg.dim() as u64, i);
                let v = alg.random_ball_element(&mut rng, 0.95);
                for sign in [1, -1] {
                    let rep = makarevic_membership(&spec, sign, &v).unwrap();
                    assert!(rep.bergman_invertible, "{kind} sign {sign} on {:?}", alg);
                }
            }
            // v = 0 is in the base component
            let rep = makarevic_membership(&spec, 1, &alg.zero()).unwrap();
            assert!(rep.bergman_invertible);
            assert_eq!(rep.in_base_component, Some(true));
        }
    }

    // AdS chart: alpha = r_{d-1}, sign -, points with beta(v,v) = -1 are
    // exactly the singular locus
    for d in 3..=5 {
        let mink = Algebra::new(Family::SpinFactor, d).unwrap();
        let spec = make_involution(&mink, InvolutionKind::MinkowskiReflection(d - 1)).unwrap();
        // spatial unit vector: beta = -1
        let mut coords = vec![0.0; d];
        coords[1] = 0.6;
        coords[d - 1] = (1.0f64 - 0.36).sqrt();
        let v = mink.element_from(&coords).unwrap();
        let rep = makarevic_membership(&spec, -1, &v).unwrap();
        assert!(!rep.bergman_invertible, "dS^{{d-1}} locus must be singular (d={d})");
        // slightly off the locus: invertible again
        let v2 = v.scale(1.1);
        assert!(makarevic_membership(&spec, -1, &v2).unwrap().bergman_invertible);
    }
}

#[test]
fn satellite_flow_property() {
    // random elements of signature (r-j, j) never lie in W(h^l) for l != j;
    // c^j (plus a small perturbation) witnesses nonemptiness for l = j
    for alg in [
        Algebra::new(Family::SymR, 3).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::HermH, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 5).unwrap(),
    ] {
        let r = alg.rank();
        for j in 0..=r {
            for i in 0..75u64 {
                let mut rng = rng_for(430 + j as u64, i);
                let v = alg.random_signature_element(&mut rng, j, 0.2, 2.0);
                for l in 0..=r {
                    if l != j {
                        assert!(
                            !wedge_membership_hj(&v, l).unwrap(),
                            "W(h^{l}) met signature ({},{j}) on {:?}",
                            r - j,
                            alg
                        );
                    }
                }
            }
            let cj = alg.signature_rep(j).unwrap();
            assert!(wedge_membership_hj(&cj, j).unwrap());
        }
    }
}

#[test]
fn fixed_invertibles_in_v0_iff_half_rank() {
    // V_0(h^j) contains invertible elements iff r = 2j
    use causalflag::lie::matrix_model;
    for alg in [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::SymR, 4).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ] {
        let r = alg.rank();
        let model = matrix_model(&alg).unwrap();
        let n = alg.dim();
        for j in 0..=r {
            // projector onto V_0(h^j)
            let hj = model.euler().h_j(j).unwrap();
            let mut dmat = DMatrix::zeros(n, n);
            for b in 0..n {
                let xb = model.embed_v_mat(&alg.basis_element(b).coords);
                let br = &hj * &xb - &xb * &hj;
                dmat.set_column(b, &model.pullback_v_mat(&br).unwrap());
            }
            let p0 = DMatrix::identity(n, n) - &dmat * &dmat;
            let expect = r == 2 * j && p0.trace().round() as usize > 0;
            // randomized search
            let mut found = false;
            for i in 0..10_000u64 {
                let mut rng = rng_for(440 + j as u64, i);
                let x = alg.random_element(&mut rng);
                let x0 = alg.element(&p0 * &x.coords).unwrap();
                if x0.inverse().is_some() {
                    found = true;
                    break;
                }
            }
            assert_eq!(found, expect, "V_0(h^{j}) invertibles on {:?} (r={r})", alg);
            // explicit witness for the even split: off-diagonal identity block
            if r == 2 * j && causalflag::jordan::Family::SpinFactor != *alg.family() {
                let mut w = alg.zero();
                // u E_{k, j+k} + conj(u) E_{j+k, k} basis elements are in V_0
                // for k <= j; their sum with u = 1 is invertible
                for k in 0..j {
                    // find the basis element E_{k,j+k} + E_{j+k,k}
                    for b in 0..n {
                        let eb = alg.basis_element(b);
                        let proj = alg.element(&p0 * &eb.coords).unwrap();
                        if proj.approx_eq(&eb, 1e-10) && eb.coords.amax() == 1.0 {
                            // accumulate only pair (k, j+k): check via frame action
                            let ck = &alg.standard_frame()[k];
                            let cjk = &alg.standard_frame()[j + k];
                            let a1 = ck.product(&eb).unwrap();
                            let a2 = cjk.product(&eb).unwrap();
                            if a1.approx_eq(&eb.scale(0.5), 1e-10)
                                && a2.approx_eq(&eb.scale(0.5), 1e-10)
                            {
                                w = w.add(&eb).unwrap();
                                break;
                            }
                        }
                    }
                }
                assert!(w.inverse().is_some(), "explicit V_0 witness not invertible");
            }
        }
    }
}

#[test]
fn flip_wedge_and_partial_cayley() {
    let alg = Algebra::new(Family::SymR, 2).unwrap();
    let e = alg.unit();
    assert!(flip_wedge_membership(&e, &e.scale(-1.0)).unwrap());
    assert!(!flip_wedge_membership(&e, &e).unwrap());

    // d_j moves the base point to the signature representative c^j
    for alg in [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::SymR, 3).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::HermH, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ] {
        let zero = embed_point(&alg.zero()).unwrap();
        for j in 0..=alg.rank() {
            let moved = partial_cayley_dj(j, &zero).unwrap();
            let cj = alg.signature_rep(j).unwrap();
            let target = embed_point(&cj).unwrap();
            assert!(
                moved.point_eq(&target, 1e-6),
                "d_{j}(0) != c^{j} on {:?}",
                alg
            );
            // chart pullback agrees and has signature (r-j, j)
            let back = causalflag::conformal::chart_pullback(&moved).unwrap().unwrap();
            let sig = back.signature();
            assert_eq!((sig.p, sig.q), (alg.rank() - j, j));
        }
        // d_0(0) = e
        let moved = partial_cayley_dj(0, &zero).unwrap();
        assert!(moved.point_eq(&embed_point(&alg.unit()).unwrap(), 1e-6));
    }
}

#[test]
fn modularity_verdicts() {
    // (P): modular iff r = 2j
    for (r, j, expect) in [
        (2usize, 1usize, true),
        (3, 1, false),
        (3, 2, false),
        (4, 2, true),
        (4, 1, false),
    ] {
        let alg = Algebra::new(Family::SymR, r).unwrap();
        let spec = make_involution(&alg, InvolutionKind::Pierce(j)).unwrap();
        let rep = modularity_check(&spec).unwrap();
        assert_eq!(rep.modular, expect, "Sym_{r}(R), pierce({j})");
        if expect {
            // the witness is an Euler element of g fixed by theta_alpha
            let w = rep.witness(&spec).unwrap();
            assert!((spec.theta_alpha(&w.mat) - &w.mat).abs().max() < 1e-6);
        }
    }
    // identity is never modular (the fixed algebra is compact)
    for alg in [
        Algebra::new(Family::SymR, 2).unwrap(),
        Algebra::new(Family::HermC, 2).unwrap(),
        Algebra::new(Family::SpinFactor, 4).unwrap(),
    ] {
        let spec = make_involution(&alg, InvolutionKind::Identity).unwrap();
        assert!(!modularity_check(&spec).unwrap().modular);
    }
    // NS and split types
    let s2 = Algebra::new(Family::SymR, 2).unwrap();
    let spec = make_involution(&s2, InvolutionKind::NonSplitNS1).unwrap();
    assert!(modularity_check(&spec).unwrap().modular);
    for (r, expect) in [(2usize, true), (3, false)] {
        let alg = Algebra::new(Family::HermC, r).unwrap();
        let spec = make_involution(&alg, InvolutionKind::SplitS1).unwrap();
        assert_eq!(modularity_check(&spec).unwrap().modular, expect, "S1 r={r}");
        let alg = Algebra::new(Family::HermH, r).unwrap();
        let spec = make_involution(&alg, InvolutionKind::SplitS2).unwrap();
        assert_eq!(modularity_check(&spec).unwrap().modular, expect, "S2 r={r}");
    }
    let h2 = Algebra::new(Family::HermC, 2).unwrap();
    let spec = make_involution(&h2, InvolutionKind::NonSplitNS2).unwrap();
    assert!(modularity_check(&spec).unwrap().modular);
    // Minkowski: r_j modular iff j >= 1 (j = 0 is the identity)
    for d in 3..=5 {
        let mink = Algebra::new(Family::SpinFactor, d).unwrap();
        for j in 0..d {
            let spec =
                make_involution(&mink, InvolutionKind::MinkowskiReflection(j)).unwrap();
            assert_eq!(
                modularity_check(&spec).unwrap().modular,
                j >= 1,
                "mink({j}) on d={d}"
            );
        }
    }
    // flip: always modular
    let dbl = Algebra::direct_sum(&Algebra::new(Family::SymR, 2).unwrap()).unwrap();
    let spec = make_involution(&dbl, InvolutionKind::Flip).unwrap();
    assert!(modularity_check(&spec).unwrap().modular);
}

#[test]
fn verify_tables_smoke() {
    let report = tables::verify_tables(2, 4, 0, 99).unwrap();
    assert!(report.rows > 0);
    assert!(
        report.diffs.is_empty(),
        "table diffs: {}",
        serde_json::to_string_pretty(&report.diffs).unwrap()
    );
}
