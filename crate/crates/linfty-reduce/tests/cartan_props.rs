use linfty_reduce::equivariant::probes::monomials;
use linfty_reduce::equivariant::samples::affine_connection;
use linfty_reduce::equivariant::{ConnectionData, ProbeSampler, ProbeShape, ProductModel};
use linfty_reduce::graded::scalar::int;
use linfty_reduce::graded::{BasisKey, SymElement};
use linfty_reduce::linfty::{check_linfty_morphism, LinftyMorphism};
use linfty_reduce::poly::{Mono, OneForm, PolyMultivector, PolySpace};
use linfty_reduce::retract::{build_inclusion, inclusion_component_alt};

const CAP: usize = 4;

/// The affine connection is `ω¹ = da + u dv`, `ω² = db − b ω¹` on `C = (u, v, a, b)`.
fn fixtures() -> Vec<(&'static str, ProductModel, ConnectionData)> {
    let t = ProductModel::translation();
    let ct = ConnectionData::coordinate(&t).unwrap();
    let a = ProductModel::affine();
    let ca = affine_connection(&a).unwrap();
    vec![("translation", t, ct), ("affine", a, ca)]
}

fn invariant_probes(m: &ProductModel, shape: &ProbeShape, count: usize, seed: u64) -> Vec<PolyMultivector> {
    let basis = m.invariant_basis(&monomials(m, shape));
    ProbeSampler::new(seed).combinations(&basis, count)
}

#[test]
fn connection_curvature() {
    let (_, _, ct) = &fixtures()[0];
    assert!(ct.is_flat());
    let (_, _, ca) = &fixtures()[1];
    assert!(!ca.is_flat());
    let s = PolySpace::new(0, 4, 0);
    assert_eq!(ca.curvature()[0].component(0, 1), s.one());
    assert_eq!(ca.curvature()[1].component(0, 1), -&s.coord(3));
    // a non-normalised form is rejected
    let m = ProductModel::translation();
    let bad = vec![OneForm::coordinate(4, 2, s.coord(0)), OneForm::coordinate(4, 3, s.one())];
    assert!(ConnectionData::new(&m, bad).is_err());
}

#[test]
fn invariant_basis_is_invariant() {
    for (name, m, _) in fixtures() {
        let basis = m.invariant_basis(&monomials(&m, &ProbeShape::cartan(1)));
        assert!(!basis.is_empty(), "{name}");
        assert!(basis.iter().all(|x| m.is_invariant(x)), "{name}");
    }
}

#[test]
fn homotopy_weight_identity() {
    for (name, m, c) in fixtures() {
        let mut s = ProbeSampler::new(3);
        for _ in 0..30 {
            let x = s.element(&m, &ProbeShape::cartan(2), 1, 0);
            let k = x.keys().next().unwrap().clone();
            let a = m.alpha_degree(&k) as i64;
            let h0 = |y: &PolyMultivector| m.cartan_homotopy_unnormalized(&c, y);
            let lhs = &h0(&m.del(&x)) + &m.del(&h0(&x));
            let rhs = &x.scale(&int(a)) + &m.vertical_number(&c, &x);
            assert_eq!(lhs, rhs, "{name}: on {x:?}");
        }
    }
}

#[test]
fn cartan_retract_identities() {
    for (name, m, c) in fixtures() {
        let r = m.cartan_retract(&c, 0, CAP);
        let pa = ProbeSampler::new(4).elements(&m, &ProbeShape::reduced(), 30, 0);
        let pb = invariant_probes(&m, &ProbeShape { max_alpha_degree: 2, ..ProbeShape::cartan(2) }, 40, 5);
        r.check(&pa, &pb).unwrap_or_else(|e| panic!("{name}: {e}"));
        r.check_flags(&pa[..5], &pb[..12]).unwrap_or_else(|e| panic!("{name}: {e}"));
        for x in &pa {
            assert!(m.is_invariant(&r.i_of(x)), "{name}: horizontal lift not invariant");
        }
    }
}

#[test]
fn inclusion_is_linfty_and_matches_alternative_form() {
    for (name, m, c) in fixtures() {
        let r = m.cartan_retract(&c, 0, CAP);
        let inc = build_inclusion(&r, CAP).unwrap();
        let mut s = ProbeSampler::new(6);
        for k in 1..=CAP {
            let probes = s.tuples(&m, &ProbeShape::reduced(), k, if k < 4 { 12 } else { 6 }, 0);
            let chk = check_linfty_morphism(&inc, &r.a, &r.b, k, &probes).unwrap();
            assert!(chk.passed, "{name}: order {k}: {:?}", chk.witness);
            if k >= 2 {
                for t in probes.iter().take(6) {
                    let word: Vec<Mono> = t.iter().map(|x| x.keys().next().unwrap().clone()).collect();
                    let prefix =
                        LinftyMorphism::new(0, (1..k).map(|j| inc.component_map(j).unwrap().clone()).collect());
                    let alt = inclusion_component_alt(&r, &prefix, &word).unwrap();
                    assert_eq!(inc.component(k, &word).unwrap(), alt, "{name}: I_{k} forms differ");
                }
            }
        }
    }
}

#[test]
fn exponential_inclusion_agrees() {
    for (name, m, c) in fixtures() {
        let r = m.cartan_retract(&c, 0, CAP);
        let inc = build_inclusion(&r, CAP).unwrap();
        let exp = m.exponential_inclusion(&c, 0, CAP);
        let mut s = ProbeSampler::new(8);
        let mut nonzero = 0;
        for k in 1..=3 {
            for t in s.tuples(&m, &ProbeShape::reduced(), k, 20, 0) {
                let refs: Vec<&PolyMultivector> = t.iter().collect();
                let w = SymElement::product_of(&refs, 0);
                let a = inc.component_on(k, &w).unwrap();
                let b = exp.component_on(k, &w).unwrap();
                assert_eq!(a, b, "{name}: order {k} on {t:?}");
                if k >= 2 {
                    nonzero += usize::from(!b.is_zero());
                }
            }
        }
        if c.is_flat() {
            assert_eq!(nonzero, 0, "{name}: flat connection has higher terms");
        } else {
            assert!(nonzero > 0, "{name}: curved connection gave no higher terms");
        }
    }
}

#[test]
fn projection_inverts_lift_and_fixes_degree() {
    for (name, m, c) in fixtures() {
        for x in ProbeSampler::new(9).elements(&m, &ProbeShape::reduced(), 20, 0) {
            let lift = m.horizontal_lift(&c, &x);
            assert_eq!(m.cartan_projection(&lift), x, "{name}");
            assert!(m.vertical_number(&c, &lift).is_zero(), "{name}");
            assert_eq!(lift.homogeneous_degree(), x.keys().next().map(|k| k.degree()));
        }
    }
}
