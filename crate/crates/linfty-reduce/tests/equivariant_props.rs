use linfty_reduce::equivariant::{ProbeSampler, ProbeShape, ProductModel};
use linfty_reduce::graded::BasisKey;
use linfty_reduce::poly::{schouten, wedge, PolyMultivector};

fn models() -> Vec<(&'static str, ProductModel)> {
    vec![
        ("translation", ProductModel::translation()),
        ("affine", ProductModel::affine()),
        ("so3", ProductModel::so3_trivial()),
    ]
}

fn sign(x: &PolyMultivector) -> i32 {
    let d = x.keys().next().map(|k| k.degree()).unwrap_or(0);
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn lifted_action_is_anti_homomorphism() {
    for (name, m) in models() {
        m.validate_lifted_action().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn kks_identities() {
    for (name, m) in models() {
        let kks = m.kks(0);
        assert!(schouten(&kks, &kks).is_zero(), "{name}: [π_KKS, π_KKS] ≠ 0");
        assert_eq!(schouten(&kks, &m.momentum(0)), m.curvature(0), "{name}: [π_KKS, J] ≠ λ");
    }
}

#[test]
fn curvature_is_central_on_invariants() {
    for (name, m) in models() {
        let lam = m.curvature(0);
        assert!(schouten(&lam, &m.kks(0)).is_zero(), "{name}");
        assert!(schouten(&lam, &m.momentum(0)).is_zero(), "{name}");
    }
}

#[test]
fn del_squares_to_zero() {
    for (name, m) in models() {
        let mut s = ProbeSampler::new(7);
        let shape = ProbeShape { max_alpha_degree: 2, ..ProbeShape::taylor() };
        for _ in 0..40 {
            let x = s.homogeneous(&m, &shape, 2, 0);
            assert!(m.del(&m.del(&x)).is_zero(), "{name}: ∂² ≠ 0 on {x:?}");
            assert!(m.kks_differential(&m.kks_differential(&x)).is_zero(), "{name}: [π_KKS, ·]² ≠ 0 on {x:?}");
        }
    }
}

// Translation-invariant probes: coefficients free of the fiber coordinates.
#[test]
fn del_is_a_derivation_on_invariants() {
    let m = ProductModel::translation();
    let mut s = ProbeSampler::new(7);
    let shape = ProbeShape { max_alpha_degree: 2, reduced_coefficients: true, ..ProbeShape::taylor() };
    for _ in 0..60 {
        {
            let x = s.homogeneous(&m, &shape, 2, 0);
            let y = s.homogeneous(&m, &shape, 2, 0);
            let name = "translation";
            let lhs = m.del(&schouten(&x, &y));
            let mut rhs = schouten(&m.del(&x), &y);
            let t = schouten(&x, &m.del(&y));
            if sign(&x) == 1 {
                rhs += &t
            } else {
                rhs -= &t
            }
            assert_eq!(lhs, rhs, "{name}: Leibniz fails on {x:?}, {y:?}");
        }
    }
}

#[test]
fn kks_differential_is_del_on_invariant_cartan_elements() {
    for (name, m) in models() {
        let mut s = ProbeSampler::new(11);
        let shape = ProbeShape::reduced();
        for _ in 0..20 {
            let x = s.homogeneous(&m, &shape, 2, 0);
            assert_eq!(m.kks_differential(&x), m.del(&x), "{name}: on {x:?}");
        }
    }
}

#[test]
fn j_homotopy_weight_identity() {
    for (name, m) in models() {
        let mut s = ProbeSampler::new(13);
        let shape = ProbeShape { max_sym: 2, max_theta_alpha: 2, ..ProbeShape::taylor() };
        for _ in 0..40 {
            let x = s.element(&m, &shape, 1, 0);
            let k = x.keys().next().unwrap().clone();
            let w = m.koszul_degree(&k) as i64;
            let lhs =
                &m.j_differential(&m.j_homotopy_unnormalized(&x)) + &m.j_homotopy_unnormalized(&m.j_differential(&x));
            assert_eq!(lhs, x.scale(&linfty_reduce::graded::scalar::int(w)), "{name}: on {x:?}");
            assert!(m.j_homotopy(&m.j_homotopy(&x)).is_zero());
        }
    }
}

#[test]
fn delta_ce_on_so3_generators() {
    let m = ProductModel::so3_trivial();
    let s = m.space(0);
    let (a, th) = (|i| s.coord(i), |i| s.partial(i));
    // coadjoint term: Σ_i f^k_{i1} α_k θ_i
    let expect = &wedge(&a(1), &th(2)) - &wedge(&a(2), &th(1));
    assert_eq!(m.delta_ce(&a(0)), expect);
    // Chevalley–Eilenberg term on Λ𝔤*: −½ f^1_{ij} θ_i θ_j
    assert_eq!(m.delta_ce(&th(0)), -&wedge(&th(1), &th(2)));
    assert!(m.del(&a(0)).is_zero());
}

#[test]
fn delta_ce_anticommutes_with_del_on_invariants() {
    let m = ProductModel::translation();
    let mut s = ProbeSampler::new(17);
    let shape = ProbeShape { max_alpha_degree: 2, reduced_coefficients: true, ..ProbeShape::taylor() };
    for _ in 0..40 {
        let x = s.homogeneous(&m, &shape, 2, 0);
        assert!((&m.delta_ce(&m.del(&x)) + &m.del(&m.delta_ce(&x))).is_zero());
        assert!(m.delta_ce(&m.delta_ce(&x)).is_zero());
        assert_eq!(&m.delta_ce(&x) + &m.del(&x), m.kks_differential(&x));
    }
}

#[test]
fn del_on_cartan_generator() {
    let m = ProductModel::translation();
    let s = m.space(0);
    // ∂(α_1) = (e_1)_C = ∂_x
    assert_eq!(m.del(&s.coord(0)), s.partial(4));
    assert!(m.del(&s.coord(2)).is_zero());
}

#[test]
fn kks_of_translation_and_so3() {
    let m = ProductModel::translation();
    let s = m.space(0);
    let expect = &wedge(&s.partial(4), &s.partial(0)) + &wedge(&s.partial(5), &s.partial(1));
    assert_eq!(m.kks(0), expect);
    // trivial action: only the cyclic sum α_k θ_i θ_j survives
    let m = ProductModel::so3_trivial();
    let s = m.space(0);
    let mut lin = s.zero();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        lin += &wedge(&s.coord(k), &wedge(&s.partial(i), &s.partial(j)));
    }
    assert_eq!(m.kks(0), lin);
}
