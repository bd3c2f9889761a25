use linfty_reduce::graded::scalar::int;
use linfty_reduce::graded::sign::combinations;
use linfty_reduce::poly::calculus::split_by_wedge_count;
use linfty_reduce::poly::{
    diff_geo_identity_check, insert_coordinate, partial, schouten, wedge, Mono, OneForm, PolyMultivector, PolySpace,
};
use proptest::prelude::*;

const DIM: usize = 3;

fn space() -> PolySpace {
    PolySpace::new(0, DIM, 0)
}

fn term() -> impl Strategy<Value = (i64, Vec<u16>, u64)> {
    (-3i64..=3, prop::collection::vec(0u16..=2, DIM).prop_filter("degree ≤ 2", |e| e.iter().sum::<u16>() <= 2), 0u64..8)
}

/// Random multivector with coefficients of degree ≤ 2 and at most two ∂'s.
fn multivector() -> impl Strategy<Value = PolyMultivector> {
    prop::collection::vec(term(), 1..4).prop_map(|ts| {
        let mut x = space().zero();
        for (c, exps, w) in ts {
            if w.count_ones() > 2 {
                continue;
            }
            x.add_scaled_term(Mono::new(vec![], exps, w), &linfty_reduce::graded::FormalSeries::one(0), &int(c));
        }
        x
    })
}

fn homogeneous() -> impl Strategy<Value = PolyMultivector> {
    (multivector(), 0u32..3).prop_map(|(x, k)| x.filter(|m| m.arity() == k))
}

fn arity_parity(x: &PolyMultivector) -> Vec<(u32, PolyMultivector)> {
    split_by_wedge_count(x, u64::MAX)
}

/// Vector field `f ∂_i` as (f, i); the oracle works on decomposables
/// `f ∂_{i1} ∧ ∂_{i2} ∧ …` written as `V_1 ∧ … ∧ V_p` with `V_1 = f ∂_{i1}`.
fn decompose(x: &PolyMultivector) -> Vec<(i64, Vec<(PolyMultivector, usize)>)> {
    let s = space();
    x.iter()
        .map(|(m, c)| {
            let c = c.coeff(0).to_integer().try_into().unwrap();
            let f = PolyMultivector::basis(Mono::new(vec![], m.exps.clone(), 0), 0);
            let idx = m.wedge_indices();
            let fields = idx.iter().enumerate().map(|(k, &i)| (if k == 0 { f.clone() } else { s.one() }, i)).collect();
            (c, fields)
        })
        .collect()
}

fn vf(f: &PolyMultivector, i: usize) -> PolyMultivector {
    wedge(f, &space().partial(i))
}

/// `[a ∂_i, b ∂_j] = a ∂_i(b) ∂_j − b ∂_j(a) ∂_i`.
fn commutator(a: &(PolyMultivector, usize), b: &(PolyMultivector, usize)) -> PolyMultivector {
    &vf(&wedge(&a.0, &partial(&b.0, a.1)), b.1) - &vf(&wedge(&b.0, &partial(&a.0, b.1)), a.1)
}

fn wedge_all(parts: &[PolyMultivector]) -> PolyMultivector {
    parts.iter().fold(space().one(), |acc, p| wedge(&acc, p))
}

/// Classical decomposable formula
/// `[V_1∧…∧V_p, W_1∧…∧W_q] = Σ (−1)^{i+j} [V_i, W_j] ∧ V_1…V̂_i…V_p ∧ W_1…Ŵ_j…W_q`.
fn schouten_oracle(x: &PolyMultivector, y: &PolyMultivector) -> PolyMultivector {
    let mut out = space().zero();
    for (cx, vs) in decompose(x) {
        for (cy, ws) in decompose(y) {
            let c = int(cx * cy);
            let p = vs.len();
            let q = ws.len();
            let mut acc = space().zero();
            if p > 0 && q > 0 {
                for i in 0..p {
                    for j in 0..q {
                        let mut parts = vec![commutator(&vs[i], &ws[j])];
                        parts.extend((0..p).filter(|&k| k != i).map(|k| vf(&vs[k].0, vs[k].1)));
                        parts.extend((0..q).filter(|&k| k != j).map(|k| vf(&ws[k].0, ws[k].1)));
                        let t = wedge_all(&parts);
                        if (i + j) % 2 == 0 {
                            acc += &t;
                        } else {
                            acc -= &t;
                        }
                    }
                }
            }
            out.add_scaled(&acc, &c);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_jacobi(x in multivector(), y in multivector(), z in multivector()) {
        // homogeneous pieces: [x,[y,z]] = [[x,y],z] + (−1)^{(p−1)(q−1)}[y,[x,z]]
        for (p, xp) in arity_parity(&x) {
            for (q, yq) in arity_parity(&y) {
                let lhs = schouten(&xp, &schouten(&yq, &z));
                let mut rhs = schouten(&schouten(&xp, &yq), &z);
                let t = schouten(&yq, &schouten(&xp, &z));
                if ((p as i32 - 1) * (q as i32 - 1)) % 2 == 0 { rhs += &t } else { rhs -= &t }
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn graded_antisymmetry(x in multivector(), y in multivector()) {
        for (p, xp) in arity_parity(&x) {
            for (q, yq) in arity_parity(&y) {
                let lhs = schouten(&xp, &yq);
                let rhs = schouten(&yq, &xp);
                // [X,Y] = −(−1)^{(|X|+1)(|Y|+1)}[Y,X] with |X| = p the number of ∂'s
                if ((p + 1) * (q + 1)) % 2 == 0 { prop_assert_eq!(lhs, -rhs) } else { prop_assert_eq!(lhs, rhs) }
            }
        }
    }

    #[test]
    fn leibniz_over_wedge(x in homogeneous(), y in homogeneous(), z in multivector()) {
        let p = x.keys().next().map_or(0, |m| m.arity()) as i32;
        let q = y.keys().next().map_or(0, |m| m.arity()) as i32;
        let lhs = schouten(&x, &wedge(&y, &z));
        let mut rhs = wedge(&schouten(&x, &y), &z);
        let t = wedge(&y, &schouten(&x, &z));
        if ((p - 1) * q) % 2 == 0 { rhs += &t } else { rhs -= &t }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matches_decomposable_oracle(x in homogeneous(), y in homogeneous()) {
        let p = x.keys().next().map_or(0, |m| m.arity());
        let q = y.keys().next().map_or(0, |m| m.arity());
        prop_assume!(p > 0 && q > 0);
        prop_assert_eq!(schouten(&x, &y), schouten_oracle(&x, &y));
    }

    #[test]
    fn diff_geo_identity_on_random_triples(
        comps in prop::collection::vec(prop::collection::vec(term(), 0..3), DIM),
        x in homogeneous(),
        y in multivector(),
    ) {
        let mut alpha = OneForm::zero(DIM, 0);
        for (i, ts) in comps.into_iter().enumerate() {
            for (c, exps, _) in ts {
                alpha.comps[i].add_scaled_term(Mono::new(vec![], exps, 0), &linfty_reduce::graded::FormalSeries::one(0), &int(c));
            }
        }
        prop_assert!(diff_geo_identity_check(&alpha, &x, &y));
    }
}

#[test]
fn schouten_leibniz_example() {
    // [x∂x∧∂y, y∂y]: oracle expansion gives x ∂x∧∂y
    let s = space();
    let a = wedge(&wedge(&s.coord(0), &s.partial(0)), &s.partial(1));
    let b = wedge(&s.coord(1), &s.partial(1));
    let expected = wedge(&s.coord(0), &wedge(&s.partial(0), &s.partial(1)));
    assert_eq!(schouten_oracle(&a, &b), expected);
    assert_eq!(schouten(&a, &b), expected);
}

#[test]
fn insertion_oracle_as_signed_slot_sum() {
    // ι(dx^i)(∂_{j1}∧…∧∂_{jk}) = Σ_r (−1)^r δ_{i j_r} ∂_{j1}∧…ĵ_r…
    let s = space();
    for k in 0..=DIM {
        for idx in combinations(DIM, k) {
            let x = s.term(int(1), &[0; DIM], &idx);
            for i in 0..DIM {
                let mut expected = s.zero();
                for (r, &j) in idx.iter().enumerate() {
                    if j == i {
                        let rest: Vec<usize> = idx.iter().copied().filter(|&t| t != j).collect();
                        let t = s.term(int(if r % 2 == 0 { 1 } else { -1 }), &[0; DIM], &rest);
                        expected += &t;
                    }
                }
                assert_eq!(insert_coordinate(i, &x), expected);
            }
        }
    }
}
