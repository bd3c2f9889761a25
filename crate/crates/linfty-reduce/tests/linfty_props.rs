use std::sync::Arc;

use linfty_reduce::graded::scalar::{frac, int};
use linfty_reduce::graded::{BasisKey, FormalSeries, SymElement};
use linfty_reduce::linfty::{
    check_linfty_morphism, coalgebra_morphism_apply, coderivation, coderivation_component, mc_pushforward, Dgla,
    LinearMap, LinftyMorphism, LinftyStructure, WordMap,
};
use linfty_reduce::poly::{schouten, wedge, Mono, PolyMultivector, PolySpace};
use proptest::prelude::*;

const DIM: usize = 3;

fn space() -> PolySpace {
    PolySpace::new(0, DIM, 0)
}

fn mono() -> impl Strategy<Value = Mono> {
    (prop::collection::vec(0u16..=2, DIM).prop_filter("degree ≤ 2", |e| e.iter().sum::<u16>() <= 2), 0u64..8)
        .prop_map(|(e, w)| Mono::new(vec![], e, w))
}

fn element() -> impl Strategy<Value = PolyMultivector> {
    prop::collection::vec((mono(), -2i64..=2), 1..3).prop_map(combine)
}

/// Bivector fields, the degree of Maurer–Cartan elements.
fn bivector() -> impl Strategy<Value = PolyMultivector> {
    let pair = prop::sample::select(vec![3u64, 5, 6]);
    prop::collection::vec((mono(), pair, -2i64..=2), 1..3)
        .prop_map(|ts| combine(ts.into_iter().map(|(m, w, c)| (Mono::new(vec![], m.exps, w), c)).collect()))
}

fn combine(ts: Vec<(Mono, i64)>) -> PolyMultivector {
    let mut x = space().zero();
    for (m, c) in ts {
        x.add_scaled_term(m, &FormalSeries::one(0), &int(c));
    }
    x
}

/// `d = [∂x∧∂y, ·]`, curvature-free.
fn flat_dgla() -> Dgla<Mono> {
    let s = space();
    let dg = Dgla::polyvector(0);
    let mu = s.term(int(1), &[0, 0, 0], &[0, 1]);
    let d = Dgla::inner_differential(&mu, &dg.bracket);
    dg.with_differential(d)
}

fn bivector_a() -> PolyMultivector {
    // ∂x∧∂y + x ∂x∧∂z, not Poisson
    let s = space();
    &s.term(int(1), &[0, 0, 0], &[0, 1]) + &s.term(int(1), &[1, 0, 0], &[0, 2])
}

fn curved_structure() -> LinftyStructure<Mono> {
    LinftyStructure::from_dgla(flat_dgla().twist(&bivector_a()), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coderivation_squares_to_zero(word in prop::collection::vec(mono(), 0..4)) {
        for l in [LinftyStructure::from_dgla(flat_dgla(), 4), curved_structure()] {
            let w = SymElement::word(word.clone(), 0);
            let qq = coderivation(&l, &coderivation(&l, &w).unwrap()).unwrap();
            prop_assert!(qq.is_zero(), "Q∘Q ≠ 0 on {:?}: {:?}", word, qq);
        }
    }

    #[test]
    fn twist_round_trip(pi in element(), probe in mono(), other in mono()) {
        let base = flat_dgla();
        let back = base.twist(&pi).twist(&-&pi);
        prop_assert_eq!(back.curvature.clone(), base.curvature.clone());
        let x = PolyMultivector::basis(probe, 0);
        prop_assert_eq!(back.d(&x), base.d(&x));
        let y = PolyMultivector::basis(other, 0);
        prop_assert_eq!(back.bracket(&x, &y), base.bracket(&x, &y));
    }

    #[test]
    fn twisted_maps_match_generic_formula(pi in bivector(), a in mono(), b in mono()) {
        // the DGLA shortcut agrees with Σ_j 1/j! Q_{k+j}(π^j ∨ w) computed on maps
        let base = LinftyStructure::from_dgla(flat_dgla(), 4);
        let generic = LinftyStructure::from_maps(
            0,
            base.q0.clone(),
            (1..=4).map(|k| Some(Arc::new({ let base = base.clone(); move |w: &[Mono]| base.q(k, w).unwrap() }) as WordMap<Mono, Mono>)).collect(),
            true,
        );
        let t1 = base.twist(&pi).unwrap();
        let t2 = generic.twist(&pi).unwrap();
        prop_assert_eq!(t1.q0.clone(), t2.q0.clone());
        prop_assert_eq!(t1.q(1, std::slice::from_ref(&a)).unwrap(), t2.q(1, std::slice::from_ref(&a)).unwrap());
        let mut w = vec![a, b];
        if linfty_reduce::graded::symword::canonicalize(&mut w) != 0 {
            prop_assert_eq!(t1.q(2, &w).unwrap(), t2.q(2, &w).unwrap());
        }
    }
}

#[test]
fn linear_component_is_minus_d() {
    let l = LinftyStructure::from_dgla(flat_dgla(), 3);
    let s = space();
    let x = wedge(&s.coord(1), &s.partial(2));
    for (k, _) in x.iter() {
        let q = coderivation_component(&l, 1, 1, std::slice::from_ref(k)).unwrap();
        let expected = SymElement::from_element(&-flat_dgla().d(&PolyMultivector::basis(k.clone(), 0)));
        assert_eq!(q, expected);
    }
}

#[test]
fn arity_two_coderivation_hand_expansion() {
    // Q(x∨y) = Q_0∨x∨y + Q_1(x)∨y + (−1)^{|x||y|} Q_1(y)∨x + Q_2(x∨y)
    let l = curved_structure();
    let s = space();
    let pairs = [
        (s.term(int(1), &[1, 0, 0], &[2]), s.term(int(1), &[0, 1, 0], &[0, 1])),
        (s.term(int(1), &[0, 0, 1], &[0]), s.term(int(1), &[1, 0, 0], &[1])),
        (s.term(int(1), &[0, 1, 0], &[]), s.term(int(1), &[0, 0, 1], &[0, 2])),
    ];
    for (x, y) in pairs {
        let a = x.keys().next().unwrap().clone();
        let b = y.keys().next().unwrap().clone();
        let w = SymElement::product_of(&[&x, &y], 0);
        let got = coderivation(&l, &w).unwrap();
        let sx = a.shifted_degree();
        let sy = b.shifted_degree();
        let mut expected = SymElement::from_element(&l.q0).product(&w);
        let q1x = l.q(1, std::slice::from_ref(&a)).unwrap();
        let q1y = l.q(1, std::slice::from_ref(&b)).unwrap();
        expected.add_scaled(&SymElement::from_element(&q1x).product(&SymElement::from_element(&y)), &int(1));
        let sign = if (sx * sy) % 2 == 0 { 1 } else { -1 };
        expected.add_scaled(&SymElement::from_element(&q1y).product(&SymElement::from_element(&x)), &int(sign));
        let q2 = SymElement::from_element(&x).product(&SymElement::from_element(&y)).apply(|wd| l.q(2, wd).unwrap());
        expected.add_scaled(&SymElement::from_element(&q2), &int(1));
        assert_eq!(got, expected);
    }
}

fn strict_identity(cap: usize) -> LinftyMorphism<Mono, Mono> {
    let id: LinearMap<Mono, Mono> = Arc::new(|k: &Mono| PolyMultivector::basis(k.clone(), 0));
    LinftyMorphism::strict(0, id, cap)
}

#[test]
fn arity_two_morphism_expansion() {
    // F(x∨y) = F_2(x∨y) + F_1(x)∨F_1(y)
    let s = space();
    let f2: WordMap<Mono, Mono> = Arc::new(|w: &[Mono]| {
        let a = PolyMultivector::basis(w[0].clone(), 0);
        let b = PolyMultivector::basis(w[1].clone(), 0);
        wedge(&a, &b)
    });
    let f = strict_identity(3).with_component(2, f2.clone());
    let x = s.term(int(1), &[1, 0, 0], &[1]);
    let y = s.term(int(1), &[0, 0, 1], &[0, 2]);
    let mut w = vec![x.keys().next().unwrap().clone(), y.keys().next().unwrap().clone()];
    let sign = linfty_reduce::graded::symword::canonicalize(&mut w);
    let got = coalgebra_morphism_apply(&f, &w).unwrap();
    let mut expected = SymElement::from_element(&f2(&w));
    expected.add_scaled(&SymElement::word(w.clone(), 0), &int(1));
    assert_eq!(sign, 1);
    assert_eq!(got, expected);
}

fn exp_ad(x: &PolyMultivector) -> LinearMap<Mono, Mono> {
    let x = x.clone();
    Arc::new(move |k: &Mono| {
        let mut term = PolyMultivector::basis(k.clone(), 0);
        let mut out = term.clone();
        for n in 1.. {
            term = schouten(&x, &term).scale(&frac(1, n));
            if term.is_zero() {
                break;
            }
            out += &term;
        }
        out
    })
}

#[test]
fn strict_automorphism_passes_and_perturbed_f2_fails() {
    // exp(ad_X) for X = z∂y preserves ∂x∧∂y, hence is a strict automorphism
    let s = space();
    let l = LinftyStructure::from_dgla(flat_dgla(), 4);
    let xf = wedge(&s.coord(2), &s.partial(1));
    let f = LinftyMorphism::strict(0, exp_ad(&xf), 4);
    let probes: Vec<Vec<PolyMultivector>> = vec![
        vec![s.term(int(1), &[0, 1, 0], &[0])],
        vec![s.term(int(1), &[0, 1, 0], &[0]), s.term(int(1), &[0, 2, 0], &[2])],
        vec![s.term(int(1), &[1, 1, 0], &[0, 1]), s.term(int(1), &[0, 1, 1], &[1])],
        vec![s.term(int(1), &[0, 0, 1], &[2]), s.term(int(1), &[0, 1, 0], &[1])],
        vec![s.coord(1), s.term(int(1), &[0, 1, 0], &[1]), s.term(int(1), &[0, 0, 0], &[0, 1])],
    ];
    for m in 1..=3 {
        let c = check_linfty_morphism(&f, &l, &l, m, &probes).unwrap();
        assert!(c.passed, "order {m}: {:?}", c.witness);
    }
    // F_2(a, b) = y·a∧b does not intertwine d = [∂x∧∂y, ·]
    let bad: WordMap<Mono, Mono> = Arc::new(|w: &[Mono]| {
        let y = space().coord(1);
        wedge(&y, &wedge(&PolyMultivector::basis(w[0].clone(), 0), &PolyMultivector::basis(w[1].clone(), 0)))
    });
    let g = f.clone().with_component(2, bad);
    assert!(check_linfty_morphism(&g, &l, &l, 1, &probes).unwrap().passed);
    let c = check_linfty_morphism(&g, &l, &l, 2, &probes).unwrap();
    assert!(!c.passed && c.witness.is_some());
}

#[test]
fn pushforward_of_mc_element_is_mc() {
    let s = space();
    let l = LinftyStructure::from_dgla(Dgla::polyvector(0), 4);
    let pi = &s.term(int(1), &[0, 0, 0], &[0, 1]) + &s.term(int(1), &[1, 0, 0], &[0, 1]);
    assert!(l.mc_check(&pi).unwrap());
    let xf = wedge(&s.coord(2), &s.partial(1));
    let f = LinftyMorphism::strict(0, exp_ad(&xf), 4);
    let image = mc_pushforward(&f, &pi).unwrap_err();
    // without ħ the powers of π never vanish, so the unbounded series runs past the cap
    assert!(matches!(image, linfty_reduce::Error::Capacity(_)));
    let image = linfty_reduce::linfty::mc_pushforward_bounded(&f, &pi, 1).unwrap();
    assert!(l.mc_check(&image).unwrap());
}

#[test]
fn mc_residual_matches_direct_bracket() {
    let s = space();
    let l = LinftyStructure::from_dgla(Dgla::polyvector(0), 4);
    // ∂x∧∂y + x∂x∧∂y lives in two dimensions and is Poisson
    let p2 = &s.term(int(1), &[0, 0, 0], &[0, 1]) + &s.term(int(1), &[1, 0, 0], &[0, 1]);
    assert!(l.mc_residual(&p2).unwrap().is_zero());
    // ∂x∧(∂y + x∂z) is not integrable
    let p3 = bivector_a();
    let r = l.mc_residual(&p3).unwrap();
    assert!(!r.is_zero());
    // Σ 1/k! Q_k(π^k) = −(R + dπ + ½[π,π])
    assert_eq!(r, schouten(&p3, &p3).scale(&frac(-1, 2)));
}

#[test]
fn twist_by_zero_is_identity() {
    let base = LinftyStructure::from_dgla(flat_dgla(), 3);
    let t = base.twist(&space().zero()).unwrap();
    let s = space();
    for x in [s.term(int(1), &[1, 0, 0], &[1]), s.term(int(1), &[0, 1, 1], &[0, 2])] {
        let k = x.keys().next().unwrap().clone();
        assert_eq!(t.q(1, std::slice::from_ref(&k)).unwrap(), base.q(1, &[k]).unwrap());
    }
    assert!(t.q0.is_zero());
}
