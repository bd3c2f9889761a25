mod common;

use common::{cases, perturbed, Case, CAP};
use linfty_reduce::equivariant::{MomentumPerturbation, ProductModel};
use linfty_reduce::graded::scalar::frac;
use linfty_reduce::hpl::{perturb_special, KoszulComplex};
use linfty_reduce::poly::{wedge, PolyMultivector};

/// Chains `e_I ⊗ x^a` with `|I| ≤ 2` and total polynomial degree `≤ 2`.
fn chain_probes(model: &ProductModel, order: usize) -> Vec<PolyMultivector> {
    let s = model.space(order);
    let coords: Vec<usize> =
        (0..model.n()).map(|i| model.alpha_index(i)).chain((0..model.m()).map(|c| model.c_index(c))).collect();
    let mut polys = vec![s.one()];
    for (i, &a) in coords.iter().enumerate() {
        polys.push(s.coord(a));
        for &b in &coords[i..] {
            polys.push(wedge(&s.coord(a), &s.coord(b)));
        }
    }
    let mut dirs = vec![s.one()];
    for i in 0..model.n() {
        dirs.push(s.partial(model.alpha_index(i)));
        for j in i + 1..model.n() {
            dirs.push(wedge(&s.partial(model.alpha_index(i)), &s.partial(model.alpha_index(j))));
        }
    }
    let mut out = Vec::new();
    for d in &dirs {
        for p in &polys {
            out.push(wedge(p, d));
        }
    }
    out
}

fn function_probes(model: &ProductModel, order: usize) -> Vec<PolyMultivector> {
    chain_probes(model, order)
        .into_iter()
        .filter(|x| x.keys().all(|k| k.wedge == 0 && model.alpha_degree(k) == 0))
        .collect()
}

fn degree0(model: &ProductModel, order: usize) -> Vec<PolyMultivector> {
    chain_probes(model, order).into_iter().filter(|x| x.keys().all(|k| k.wedge == 0)).collect()
}

fn assert_all(case: &str, checks: Vec<linfty_reduce::hpl::IdentityCheck>) {
    for c in checks {
        assert!(c.passed, "{case}: {} fails: {:?}", c.name, c.witness);
    }
}

#[test]
fn koszul_complex_is_a_retract_of_functions_on_c() {
    for c in cases() {
        let kc = KoszulComplex::new(&c.model, 2);
        let he = kc.he_data();
        let (cp, dp) = (function_probes(&c.model, 2), chain_probes(&c.model, 2));
        assert_all(c.name, he.check(&cp, &dp));
        assert!(he.check_section(&cp).passed);
    }
}

#[test]
fn homotopy_is_acyclic_in_positive_degree() {
    for c in cases() {
        let kc = KoszulComplex::new(&c.model, 1);
        for x in chain_probes(&c.model, 1) {
            let q = x.keys().map(|k| kc.chain_degree(k)).max().unwrap_or(0);
            let mut r = &kc.differential(&kc.homotopy(&x)) + &kc.homotopy(&kc.differential(&x));
            if q == 0 {
                r += &kc.restriction(&x);
            }
            assert_eq!(r, x, "{}", c.name);
        }
    }
}

#[test]
fn homotopy_examples() {
    let m = ProductModel::so3_trivial();
    let kc = KoszulComplex::new(&m, 0);
    let s = m.space(0);
    let (a1, a2) = (m.alpha_index(0), m.alpha_index(1));
    assert_eq!(kc.homotopy(&s.coord(a1)), s.partial(a1));
    // h_0(μ_1 μ_2) = (e_1 μ_2 + e_2 μ_1) / 2
    let mu12 = wedge(&s.coord(a1), &s.coord(a2));
    let expected = (&wedge(&s.coord(a2), &s.partial(a1)) + &wedge(&s.coord(a1), &s.partial(a2))).scale(&frac(1, 2));
    assert_eq!(kc.homotopy(&mu12), expected);
    assert_eq!(kc.differential(&kc.homotopy(&mu12)), mu12);
    assert!(kc.restriction(&mu12).is_zero());
}

#[test]
fn differential_is_equivariant() {
    for c in cases() {
        let kc = KoszulComplex::new(&c.model, 2);
        let (_, _, _, jp) = perturbed(&c, 2);
        let probes = chain_probes(&c.model, 2);
        assert!(probes.iter().any(|x| !kc.rho(0, x).is_zero()));
        for x in probes {
            for a in 0..c.model.n() {
                let lhs = kc.differential(&kc.rho(a, &x));
                let rhs = kc.rho(a, &kc.differential(&x));
                assert_eq!(lhs, rhs, "{} ∂ρ(e_{a})", c.name);
                let lhs = kc.deformed_differential(&jp, &kc.rho(a, &x));
                let rhs = kc.rho(a, &kc.deformed_differential(&jp, &x));
                assert_eq!(lhs, rhs, "{} ∂_ħ ρ(e_{a})", c.name);
            }
        }
    }
}

#[test]
fn perturbed_identities_hold() {
    for c in cases() {
        for n in [2, 3] {
            let (_, _, _, jp) = perturbed(&c, n);
            let kc = KoszulComplex::new(&c.model, n);
            let (cp, dp) = (function_probes(&c.model, n), chain_probes(&c.model, n));
            let he = kc.deformed_he_data(&jp).unwrap();
            assert_all(c.name, he.check(&cp, &dp));
            assert!(he.check_section(&cp).passed);
            let special = perturb_special(&kc.he_data(), kc.perturbation_map(&jp));
            for x in &dp {
                assert_eq!(he.p_of(x), special.p_of(x), "{} P", c.name);
                assert_eq!(he.h_of(x), special.h_of(x), "{} H", c.name);
                assert_eq!(he.p_of(x), kc.deformed_restriction(&jp, x), "{} ι*_ħ", c.name);
            }
            for x in &cp {
                assert_eq!(he.i_of(x), special.i_of(x), "{} I", c.name);
                assert_eq!(he.d_c_of(x), special.d_c_of(x), "{} d_C", c.name);
            }
        }
    }
}

#[test]
fn zero_perturbation_changes_nothing() {
    let c = &cases()[0];
    let kc = KoszulComplex::new(&c.model, 2);
    let zero = MomentumPerturbation::zero(&c.model, 2);
    let he = kc.he_data();
    let de = kc.deformed_he_data(&zero).unwrap();
    for x in chain_probes(&c.model, 2) {
        assert_eq!(he.p_of(&x), de.p_of(&x));
        assert_eq!(he.h_of(&x), de.h_of(&x));
        assert_eq!(kc.deformed_restriction(&zero, &x), kc.restriction(&x));
    }
}

/// `J_i = μ_i + ħJ'_i`.
fn deformed_momentum(c: &Case, jp: &MomentumPerturbation, n: usize) -> Vec<PolyMultivector> {
    let s = c.model.space(n);
    (0..c.model.n()).map(|i| &s.coord(c.model.alpha_index(i)) + &jp.scaled(i).with_order(n)).collect()
}

#[test]
fn kernel_of_deformed_restriction_is_the_ideal() {
    for c in cases() {
        let n = 3;
        let (_, _, _, jp) = perturbed(&c, n);
        let kc = KoszulComplex::new(&c.model, n);
        let he = kc.deformed_he_data(&jp).unwrap();
        let js = deformed_momentum(&c, &jp, n);
        let probes = degree0(&c.model, n);
        // ideal ⊂ kernel
        for g in &probes {
            for j in &js {
                assert!(kc.deformed_restriction(&jp, &wedge(j, g)).is_zero(), "{}", c.name);
            }
        }
        // kernel ⊂ ideal: f − I P f = Σ J_i g_i with g_i the coefficients of e_i in H f
        for f in &probes {
            let k = f - &he.i_of(&he.p_of(f));
            assert!(kc.deformed_restriction(&jp, &k).is_zero());
            let hk = he.h_of(&k);
            let mut sum = PolyMultivector::zero(n);
            for (i, j) in js.iter().enumerate() {
                let gi = linfty_reduce::poly::insert_coordinate(c.model.alpha_index(i), &hk);
                assert!(gi.keys().all(|m| m.wedge == 0));
                sum += &wedge(j, &gi);
            }
            assert_eq!(sum, k, "{}", c.name);
        }
    }
}

#[test]
fn reduced_structures_agree() {
    for c in cases() {
        for n in [2, 3] {
            let (red, pi, pi2, jp) = perturbed(&c, n);
            let kc = KoszulComplex::new(&c.model, n);
            let zero = MomentumPerturbation::zero(&c.model, n);
            assert_eq!(kc.reduced_structure(&pi, &zero).unwrap(), red, "{} classical", c.name);
            let hpl = kc.reduced_structure(&pi2, &jp).unwrap();
            let linfty = c.model.reduce_linfty(&pi2, &jp, CAP).unwrap();
            assert_eq!(hpl, linfty, "{} N = {n}", c.name);
            assert_eq!(hpl, red, "{} N = {n}", c.name);
        }
    }
}

#[test]
fn momentum_violation_is_rejected() {
    let c = &cases()[0];
    let (_, _, pi2, _) = perturbed(c, 2);
    let zero = MomentumPerturbation::zero(&c.model, 2);
    let kc = KoszulComplex::new(&c.model, 2);
    assert!(kc.reduced_structure(&pi2, &zero).is_err());
}

#[test]
fn reduced_bracket_is_poisson() {
    for c in cases() {
        let n = 2;
        let (_, _, pi2, jp) = perturbed(&c, n);
        let kc = KoszulComplex::new(&c.model, n);
        let s = c.model.space(n);
        let (u, v) = (s.coord(c.model.c_index(0)), s.coord(c.model.c_index(1)));
        let probes = [u.clone(), v.clone(), wedge(&u, &v), wedge(&u, &u), &v + &s.one()];
        let br = |f: &PolyMultivector, g: &PolyMultivector| {
            kc.descend(&kc.reduced_bracket_on_c(&pi2, &jp, f, g).unwrap()).unwrap()
        };
        assert!(br(&s.one(), &u).is_zero());
        for f in &probes {
            for g in &probes {
                assert_eq!(br(f, g), -&br(g, f), "{}", c.name);
                for h in &probes {
                    let leib = &(&wedge(&br(f, g), h) + &wedge(g, &br(f, h))) - &br(f, &wedge(g, h));
                    assert!(leib.is_zero(), "{} Leibniz", c.name);
                    let mut jac = br(f, &br(g, h));
                    jac += &br(g, &br(h, f));
                    jac += &br(h, &br(f, g));
                    assert!(jac.is_zero(), "{} Jacobi", c.name);
                }
            }
        }
    }
}

#[test]
fn gauge_transport_is_trivial_on_reduction() {
    for c in cases() {
        let n = 3;
        let (_, _, pi2, jp) = perturbed(&c, n);
        let g = c.model.gauge_to_classical_momentum(&pi2, &jp).unwrap();
        let kc = KoszulComplex::new(&c.model, n);
        let zero = MomentumPerturbation::zero(&c.model, n);
        for f in function_probes(&c.model, n).iter().filter(|f| kc.descend(f).ok().as_ref() == Some(*f)) {
            let t = kc.transport_equivalence(&g.x_infinity, (&g.pi_gauged, &zero), (&pi2, &jp), f).unwrap();
            assert_eq!(&t, f, "{}", c.name);
            let id = kc.transport_equivalence(&PolyMultivector::zero(n), (&pi2, &jp), (&pi2, &jp), f).unwrap();
            assert_eq!(&id, f);
        }
    }
}

#[test]
fn reduced_direction_transport_is_multiplicative() {
    let c = &cases()[0];
    let n = 3;
    let (_, pi, _, _) = perturbed(c, n);
    let kc = KoszulComplex::new(&c.model, n);
    let s = c.model.space(n);
    let zero = MomentumPerturbation::zero(&c.model, n);
    let x = s.partial(c.model.c_index(0)).mul_hbar(1);
    let (u, v) = (s.coord(c.model.c_index(0)), s.coord(c.model.c_index(1)));
    let t = |f: &PolyMultivector| kc.transport_equivalence(&x, (&pi, &zero), (&pi, &zero), f).unwrap();
    // u ↦ u + ħ
    assert_eq!(t(&u), &u + &s.one().mul_hbar(1));
    for (f, g) in [(u.clone(), v.clone()), (u.clone(), wedge(&u, &v)), (wedge(&u, &u), u.clone())] {
        assert_eq!(t(&wedge(&f, &g)), wedge(&t(&f), &t(&g)));
    }
    let bad = s.partial(c.model.alpha_index(0)).mul_hbar(1);
    assert!(kc.transport_equivalence(&bad, (&pi, &zero), (&pi, &zero), &u).is_err());
}
