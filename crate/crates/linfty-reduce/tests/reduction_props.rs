mod common;

use common::{cases, classical, perturbed, CAP};
use linfty_reduce::equivariant::samples::reduced_structure;
use linfty_reduce::equivariant::{MomentumPerturbation, ProbeSampler, ProbeShape, ProductModel};
use linfty_reduce::graded::SymElement;
use linfty_reduce::linfty::check_linfty_morphism;
use linfty_reduce::poly::{wedge, PolyMultivector};

#[test]
fn fixtures_are_classical_mc_elements() {
    for c in cases() {
        for n in [0, 2] {
            let (_, pi) = classical(&c, n);
            assert!(c.model.classical_mc_residual(&pi).is_zero(), "{}", c.name);
        }
    }
}

#[test]
fn kks_of_translation() {
    let m = ProductModel::translation();
    let s = m.space(0);
    let mut expected = s.zero();
    for i in 0..m.n() {
        expected += &wedge(&s.partial(m.c_index(m.m_red() + i)), &s.partial(m.alpha_index(i)));
    }
    assert_eq!(m.kks(0), expected);
}

#[test]
fn classical_reduction_recovers_the_quotient() {
    for c in cases() {
        let (red, pi) = classical(&c, 2);
        assert_eq!(c.model.reduce_classical(&pi, CAP).unwrap(), red, "{}", c.name);
        assert_eq!(c.model.marsden_weinstein(&pi), red, "{}", c.name);
    }
}

#[test]
fn gauge_perturbations_are_formal_mc_elements() {
    for c in cases() {
        let (_, _, pi2, jp) = perturbed(&c, 3);
        assert!(!jp.is_zero());
        assert!(c.model.formal_mc_residual(&pi2, &jp).is_zero(), "{}", c.name);
        // the perturbed π with J' dropped is not
        let zero = MomentumPerturbation::zero(&c.model, 3);
        assert!(!c.model.formal_mc_residual(&pi2, &zero).is_zero(), "{}", c.name);
    }
}

#[test]
fn gauge_recursion_reaches_classical_momentum() {
    for c in cases() {
        let n = 3;
        let (_, _, pi2, jp) = perturbed(&c, n);
        let g = c.model.gauge_to_classical_momentum(&pi2, &jp).unwrap();
        assert!(!g.steps.is_empty() && g.steps.len() <= n + 1, "{}", c.name);
        let zero = MomentumPerturbation::zero(&c.model, n);
        assert!(c.model.formal_mc_residual(&g.pi_gauged, &zero).is_zero(), "{}", c.name);
        assert!(c.model.is_invariant(&g.x_infinity), "{}", c.name);
        assert!(g.x_infinity.min_valuation().unwrap() >= 1);
    }
}

#[test]
fn linfty_reduction_is_gauge_independent() {
    for c in cases() {
        for n in [2, 3] {
            let (red, pi, pi2, jp) = perturbed(&c, n);
            let zero = MomentumPerturbation::zero(&c.model, n);
            assert_eq!(c.model.reduce_linfty(&pi, &zero, CAP).unwrap(), red, "{} N = {n}", c.name);
            assert_eq!(c.model.reduce_linfty(&pi2, &jp, CAP).unwrap(), red, "{} N = {n}", c.name);
        }
    }
}

fn small_taylor() -> ProbeShape {
    ProbeShape { max_c_arity: 1, ..ProbeShape::taylor() }
}

#[test]
fn projection_is_a_morphism_of_flat_formal_algebras() {
    for c in cases() {
        let order = 1;
        let p = c.model.taylor_projection_morphism(order, CAP).unwrap();
        let src = c.model.flat_formal_taylor(order, CAP);
        let tgt = c.model.flat_formal_cartan(order, CAP);
        let mut s = ProbeSampler::new(11);
        for k in 1..=3 {
            let probes = s.tuples(&c.model, &small_taylor(), k, 8, order);
            let r = check_linfty_morphism(&p, &src, &tgt, k, &probes).unwrap();
            assert!(r.passed, "{}: order {k}: {:?}", c.name, r.witness);
        }
    }
}

#[test]
fn projection_is_a_morphism_of_curved_algebras() {
    for c in cases() {
        let p = c.model.taylor_projection_morphism(0, CAP).unwrap();
        let src = c.model.curved_classical_taylor(0, CAP);
        let tgt = c.model.classical_cartan(0, CAP);
        let r = check_linfty_morphism(&p, &src, &tgt, 0, &[vec![]]).unwrap();
        assert!(r.passed, "{}: curvature: {:?}", c.name, r.witness);
        let mut s = ProbeSampler::new(12);
        // order m involves P_{m+1}, so the cap bounds the checked orders
        for k in 1..CAP {
            let probes = s.tuples(&c.model, &small_taylor(), k, 8, 0);
            let r = check_linfty_morphism(&p, &src, &tgt, k, &probes).unwrap();
            assert!(r.passed, "{}: order {k}: {:?}", c.name, r.witness);
        }
    }
}

#[test]
fn projection_is_supported_on_sym_degree_n_minus_one() {
    for c in cases() {
        let p = c.model.taylor_projection_morphism(0, CAP).unwrap();
        let q = c.model.supported_projection(0, CAP).unwrap();
        let mut s = ProbeSampler::new(13);
        for k in 1..=3 {
            for t in s.tuples(&c.model, &small_taylor(), k, 10, 0) {
                let refs: Vec<&PolyMultivector> = t.iter().collect();
                let w = SymElement::product_of(&refs, 0);
                assert_eq!(p.component_on(k, &w).unwrap(), q.component_on(k, &w).unwrap(), "{}", c.name);
            }
        }
    }
}

#[test]
fn reduction_is_surjective_on_samples() {
    for c in cases() {
        let Some(conn) = c.connection.as_ref() else { continue };
        let red = reduced_structure(&c.model, c.scale, 0);
        if c.hbar {
            // the classical lift is an infinite series under curvature
            continue;
        }
        let (pre, image) = c.model.surjectivity_witness(conn, &red, CAP).unwrap();
        assert!(c.model.classical_mc_residual(&pre).is_zero(), "{}", c.name);
        assert_eq!(image, red, "{}", c.name);
    }
}

#[test]
fn taylor_and_cartan_cohomology_agree() {
    for m in [ProductModel::translation(), ProductModel::affine(), ProductModel::so3_trivial()] {
        for weight in 0..=2 {
            for row in m.cohomology_check(2, weight, 1).unwrap() {
                assert_eq!(row.taylor, row.cartan, "{row:?}");
            }
        }
    }
}
