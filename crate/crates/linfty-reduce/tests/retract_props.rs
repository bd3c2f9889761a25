use linfty_reduce::equivariant::{ProbeSampler, ProbeShape, ProductModel};
use linfty_reduce::graded::scalar::int;
use linfty_reduce::graded::{GradedElement, SymElement};
use linfty_reduce::linfty::{check_linfty_morphism, coderivation_component_on};
use linfty_reduce::poly::{Mono, PolyMultivector};
use linfty_reduce::retract::{build_projection, homotopy_extension_on, projection_p2_closed_form, DeformationRetract};

const CAP: usize = 4;

fn models() -> Vec<(&'static str, ProductModel)> {
    vec![
        ("translation", ProductModel::translation()),
        ("affine", ProductModel::affine()),
        ("so3", ProductModel::so3_trivial()),
    ]
}

fn small_taylor() -> ProbeShape {
    ProbeShape { max_c_arity: 1, ..ProbeShape::taylor() }
}

fn ip_power(r: &DeformationRetract<Mono, Mono>, w: &SymElement<Mono>) -> SymElement<Mono> {
    w.flat_map(|word| {
        let parts: Vec<GradedElement<Mono>> =
            word.iter().map(|x| r.i_of(&r.p_of(&PolyMultivector::basis(x.clone(), r.order())))).collect();
        let refs: Vec<&GradedElement<Mono>> = parts.iter().collect();
        SymElement::product_of(&refs, r.order())
    })
}

#[test]
fn j_retract_identities() {
    for (name, m) in models() {
        let r = m.j_retract(0, CAP);
        let mut s = ProbeSampler::new(1);
        let pa = s.elements(&m, &ProbeShape::cartan(2), 30, 0);
        let pb = s.elements(&m, &ProbeShape { max_sym: 2, max_theta_alpha: 2, ..ProbeShape::taylor() }, 30, 0);
        r.check(&pa, &pb).unwrap_or_else(|e| panic!("{name}: {e}"));
        r.check_flags(&pa[..8], &pb[..8]).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn extended_homotopy_identity() {
    for (name, m) in models() {
        let r = m.j_retract(0, CAP);
        let mut s = ProbeSampler::new(2);
        for n in 1..=4 {
            for t in s.tuples(&m, &small_taylor(), n, 20, 0) {
                let refs: Vec<&PolyMultivector> = t.iter().collect();
                let w = SymElement::product_of(&refs, 0);
                let hw = homotopy_extension_on(&r, &w, CAP).unwrap();
                let mut lhs = coderivation_component_on(&r.b, n, n, &hw).unwrap();
                let qw = coderivation_component_on(&r.b, n, n, &w).unwrap();
                lhs.add_scaled(&homotopy_extension_on(&r, &qw, CAP).unwrap(), &int(1));
                let mut rhs = w.clone();
                rhs.add_scaled(&ip_power(&r, &w), &int(-1));
                assert_eq!(lhs, rhs, "{name}: n = {n} on {t:?}");
            }
        }
    }
}

#[test]
fn projection_is_linfty_up_to_order_four() {
    for (name, m) in models() {
        let r = m.j_retract(0, CAP);
        let p = build_projection(&r, CAP).unwrap();
        let mut s = ProbeSampler::new(3);
        for k in 1..=CAP {
            let probes = s.tuples(&m, &small_taylor(), k, if k < 4 { 12 } else { 6 }, 0);
            let c = check_linfty_morphism(&p, &r.b, &r.a, k, &probes).unwrap();
            assert!(c.passed, "{name}: order {k}: {:?}", c.witness);
        }
    }
}

#[test]
fn p2_closed_form_matches_recursion() {
    for (name, m) in models() {
        let r = m.j_retract(0, CAP);
        let p = build_projection(&r, CAP).unwrap();
        let mut s = ProbeSampler::new(4);
        let shape = ProbeShape { max_sym: 2, max_theta_alpha: 0, ..small_taylor() };
        let mut nonzero = 0;
        for _ in 0..60 {
            let x1 = s.element(&m, &shape, 1, 0);
            let x2 = s.element(&m, &shape, 1, 0);
            let (k1, k2) = (x1.keys().next().unwrap(), x2.keys().next().unwrap());
            let w = [k1.clone(), k2.clone()];
            let rec = p.component_on(2, &SymElement::word(w.to_vec(), 0)).unwrap();
            let closed = projection_p2_closed_form(&r, k1, k2).unwrap();
            assert_eq!(rec, closed, "{name}: on {k1:?}, {k2:?}");
            nonzero += usize::from(!closed.is_zero());
        }
        assert!(nonzero > 0, "{name}: no probe exercised P_2");
    }
}

#[test]
fn projection_vanishes_on_inclusion_images() {
    for (name, m) in models() {
        let r = m.j_retract(0, CAP);
        let p = build_projection(&r, CAP).unwrap();
        let mut s = ProbeSampler::new(5);
        for k in 2..=3 {
            for t in s.tuples(&m, &ProbeShape::cartan(1), k, 10, 0) {
                let images: Vec<PolyMultivector> = t.iter().map(|x| r.i_of(x)).collect();
                let refs: Vec<&PolyMultivector> = images.iter().collect();
                let w = SymElement::product_of(&refs, 0);
                assert!(p.component_on(k, &w).unwrap().is_zero(), "{name}: P_{k} on i-images");
            }
        }
    }
}
