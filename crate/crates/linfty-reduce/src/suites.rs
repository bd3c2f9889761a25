//! The invariant suites behind `linfty-reduce check`.

use crate::equivariant::probes::monomials;
use crate::equivariant::{ProbeSampler, ProbeShape, ProductModel};
use crate::error::Result;
use crate::fixture::Fixture;
use crate::graded::scalar::int;
use crate::graded::sign::{binomial, compose, permutations};
use crate::graded::{koszul_sign, shuffles, GradedElement, SymElement};
use crate::hpl::{perturb_special, KoszulComplex};
use crate::linfty::{check_linfty_morphism, coderivation_component_on};
use crate::poly::{insert_coordinate, schouten, wedge, Mono, PolyMultivector};
use crate::report::Check;
use crate::retract::{
    build_inclusion, build_projection, homotopy_extension_on, projection_p2_closed_form, DeformationRetract,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Signs,
    Retract,
    Linfty,
    Kks,
    Hpl,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Signs, Suite::Retract, Suite::Linfty, Suite::Kks, Suite::Hpl];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Signs => "signs",
            Suite::Retract => "retract",
            Suite::Linfty => "linfty",
            Suite::Kks => "kks",
            Suite::Hpl => "hpl",
        }
    }

    pub fn run(self, fx: &Fixture) -> Result<Vec<Check>> {
        match self {
            Suite::Signs => Ok(signs()),
            Suite::Retract => retract(fx),
            Suite::Linfty => linfty(fx),
            Suite::Kks => Ok(kks(fx)),
            Suite::Hpl => hpl(fx),
        }
    }
}

fn small_taylor() -> ProbeShape {
    ProbeShape { max_c_arity: 1, ..ProbeShape::taylor() }
}

fn taylor_shape() -> ProbeShape {
    ProbeShape { max_sym: 2, max_theta_alpha: 2, ..ProbeShape::taylor() }
}

fn all_degree_vectors(n: usize) -> Vec<Vec<i32>> {
    (0..3usize.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = (code % 3) as i32;
                    code /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

pub fn signs() -> Vec<Check> {
    let mut cocycle = Check::pass("koszul_sign is a cocycle (n <= 4, degrees 0..=2)");
    'outer: for n in 1..=4 {
        let perms = permutations(n);
        for degrees in all_degree_vectors(n) {
            for sigma in &perms {
                let permuted: Vec<i32> = sigma.iter().map(|&i| degrees[i]).collect();
                for tau in &perms {
                    let direct = koszul_sign(&compose(sigma, tau), &degrees).expect("valid permutation");
                    let split = koszul_sign(sigma, &degrees).expect("valid permutation")
                        * koszul_sign(tau, &permuted).expect("valid permutation");
                    if direct != split {
                        cocycle = Check::fail(cocycle.name, format!("sigma={sigma:?} tau={tau:?} degrees={degrees:?}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut counts = Check::pass("|Sh(k, n-k)| = binomial(n, k) (n <= 8)");
    for n in 0..=8 {
        for k in 0..=n {
            let got = shuffles(k, n - k).len();
            if got != binomial(n, k) && counts.passed {
                counts = Check::fail(counts.name.clone(), format!("Sh({k}, {}) has {got} elements", n - k));
            }
        }
    }
    vec![cocycle, counts]
}

fn ip_power(r: &DeformationRetract<Mono, Mono>, w: &SymElement<Mono>) -> SymElement<Mono> {
    w.flat_map(|word| {
        let parts: Vec<GradedElement<Mono>> =
            word.iter().map(|x| r.i_of(&r.p_of(&PolyMultivector::basis(x.clone(), r.order())))).collect();
        let refs: Vec<&GradedElement<Mono>> = parts.iter().collect();
        SymElement::product_of(&refs, r.order())
    })
}

fn invariant_probes(m: &ProductModel, shape: &ProbeShape, count: usize, seed: u64) -> Vec<PolyMultivector> {
    let basis = m.invariant_basis(&monomials(m, shape));
    ProbeSampler::new(seed).combinations(&basis, count)
}

pub fn retract(fx: &Fixture) -> Result<Vec<Check>> {
    let (m, cap, count) = (&fx.model, fx.truncation.arity_cap, fx.probes.count.max(1));
    let mut s = ProbeSampler::new(fx.probes.seed);
    let mut out = Vec::new();
    let r = m.j_retract(0, cap);
    let pa = s.elements(m, &ProbeShape::cartan(2), 4 * count, 0);
    let pb = s.elements(m, &taylor_shape(), 4 * count, 0);
    out.push(Check::from_result(
        "j-retract: p i = id, p h = h i = h h = 0, i and p chain maps, id - i p = d h + h d",
        r.check(&pa, &pb),
    )?);
    out.push(Check::from_result("j-retract: DGLA morphism flags", r.check_flags(&pa[..count], &pb[..count]))?);
    for n in 1..=cap {
        let mut c = Check::pass(format!("Q H_{n} + H_{n} Q = id - (ip)^{n}"));
        for t in s.tuples(m, &small_taylor(), n, 4 * count, 0) {
            let refs: Vec<&PolyMultivector> = t.iter().collect();
            let w = SymElement::product_of(&refs, 0);
            let hw = homotopy_extension_on(&r, &w, cap)?;
            let mut lhs = coderivation_component_on(&r.b, n, n, &hw)?;
            let qw = coderivation_component_on(&r.b, n, n, &w)?;
            lhs.add_scaled(&homotopy_extension_on(&r, &qw, cap)?, &int(1));
            let mut rhs = w.clone();
            rhs.add_scaled(&ip_power(&r, &w), &int(-1));
            if lhs != rhs {
                c = Check::fail(c.name, format!("on {t:?}"));
                break;
            }
        }
        out.push(c);
    }
    if let Some(conn) = &fx.connection {
        let r = m.cartan_retract(conn, 0, cap);
        let pa = s.elements(m, &ProbeShape::reduced(), 4 * count, 0);
        let pb = invariant_probes(
            m,
            &ProbeShape { max_alpha_degree: 2, ..ProbeShape::cartan(2) },
            4 * count,
            fx.probes.seed,
        );
        out.push(Check::from_result("Cartan retract identities", r.check(&pa, &pb))?);
        out.push(Check::from_result("Cartan retract: DGLA morphism flags", r.check_flags(&pa[..count], &pb[..count]))?);
    }
    Ok(out)
}

pub fn linfty(fx: &Fixture) -> Result<Vec<Check>> {
    let (m, cap, count) = (&fx.model, fx.truncation.arity_cap, fx.probes.count.max(1));
    let mut s = ProbeSampler::new(fx.probes.seed);
    let mut out = Vec::new();
    let r = m.j_retract(0, cap);
    let p = build_projection(&r, cap)?;
    for k in 1..=cap {
        let probes = s.tuples(m, &small_taylor(), k, 2 * count, 0);
        let c = check_linfty_morphism(&p, &r.b, &r.a, k, &probes)?;
        out.push(Check { name: format!("P is L-infinity at order {k}"), passed: c.passed, witness: c.witness });
    }
    let shape = ProbeShape { max_sym: 2, max_theta_alpha: 0, ..small_taylor() };
    let mut c2 = Check::pass("P_2 closed form equals the recursion");
    for _ in 0..4 * count {
        let x1 = s.element(m, &shape, 1, 0);
        let x2 = s.element(m, &shape, 1, 0);
        let (k1, k2) = (x1.keys().next().expect("nonzero").clone(), x2.keys().next().expect("nonzero").clone());
        let rec = p.component_on(2, &SymElement::word(vec![k1.clone(), k2.clone()], 0))?;
        if rec != projection_p2_closed_form(&r, &k1, &k2)? {
            c2 = Check::fail(c2.name, format!("on {k1:?}, {k2:?}"));
            break;
        }
    }
    out.push(c2);
    if let Some(conn) = &fx.connection {
        let rc = m.cartan_retract(conn, 0, cap);
        let inc = build_inclusion(&rc, cap)?;
        for k in 1..=cap {
            let probes = s.tuples(m, &ProbeShape::reduced(), k, 2 * count, 0);
            let c = check_linfty_morphism(&inc, &rc.a, &rc.b, k, &probes)?;
            out.push(Check { name: format!("I is L-infinity at order {k}"), passed: c.passed, witness: c.witness });
        }
        let exp = m.exponential_inclusion(conn, 0, cap);
        let mut agree = Check::pass("exponential inclusion agrees with the recursion (k <= 3)");
        let mut higher = 0;
        for k in 1..=cap.min(3) {
            for t in s.tuples(m, &ProbeShape::reduced(), k, 2 * count, 0) {
                let refs: Vec<&PolyMultivector> = t.iter().collect();
                let w = SymElement::product_of(&refs, 0);
                let (a, b) = (inc.component_on(k, &w)?, exp.component_on(k, &w)?);
                if a != b && agree.passed {
                    agree = Check::fail(agree.name.clone(), format!("order {k} on {t:?}"));
                }
                if k >= 2 && !b.is_zero() {
                    higher += 1;
                }
            }
        }
        out.push(agree);
        if conn.is_flat() {
            out.push(if higher == 0 {
                Check::pass("flat connection: higher inclusion terms vanish")
            } else {
                Check::fail("flat connection: higher inclusion terms vanish", format!("{higher} nonzero values"))
            });
        }
    }
    Ok(out)
}

pub fn kks(fx: &Fixture) -> Vec<Check> {
    let m = &fx.model;
    let names = m.names();
    let count = fx.probes.count.max(1);
    let mut out = Vec::new();
    out.push(match m.validate_lifted_action() {
        Ok(()) => Check::pass("lifted action is an anti-homomorphism"),
        Err(e) => Check::fail("lifted action is an anti-homomorphism", e.to_string()),
    });
    let kks = m.kks(0);
    out.push(Check::zero("[π_KKS, π_KKS] = 0", &schouten(&kks, &kks), &names));
    out.push(Check::zero("[π_KKS, J] = λ", &(&schouten(&kks, &m.momentum(0)) - &m.curvature(0)), &names));
    let mut s = ProbeSampler::new(fx.probes.seed);
    let shape = ProbeShape { max_alpha_degree: 2, ..ProbeShape::taylor() };
    let probes = s.elements(m, &shape, 4 * count, 0);
    let first_nonzero = |f: &dyn Fn(&PolyMultivector) -> PolyMultivector| probes.iter().map(f).find(|r| !r.is_zero());
    let named = |name: &str, r: Option<PolyMultivector>| match r {
        None => Check::pass(name),
        Some(r) => Check::fail(name, crate::report::format_element(&r, &names)),
    };
    out.push(named("∂² = 0", first_nonzero(&|x| m.del(&m.del(x)))));
    out.push(named("[π_KKS, [π_KKS, ·]] = 0", first_nonzero(&|x| m.kks_differential(&m.kks_differential(x)))));
    let cartan = s.elements(m, &ProbeShape::reduced(), 4 * count, 0);
    out.push(named(
        "[π_KKS, ·] = ∂ on the Cartan shape",
        cartan.iter().map(|x| &m.kks_differential(x) - &m.del(x)).find(|r| !r.is_zero()),
    ));
    let inv = invariant_probes(m, &ProbeShape { max_c_arity: 1, ..ProbeShape::taylor() }, 2 * count, fx.probes.seed);
    out.push(named(
        "[π_KKS, ·] = δ_CE + ∂ on invariants",
        inv.iter().map(|x| &(&m.kks_differential(x) - &m.delta_ce(x)) - &m.del(x)).find(|r| !r.is_zero()),
    ));
    let jp = &fx.momentum_perturbation;
    if jp.is_zero() {
        out.push(Check::zero("λ - [J, π] + ½[π, π] = 0", &m.classical_mc_residual(&fx.pi), &names));
    }
    out.push(Check::zero("ħλ - [J, Π] + ½[Π, Π] = 0 for Π = ħ(π - J')", &m.formal_mc_residual(&fx.pi, jp), &names));
    out
}

pub fn hpl(fx: &Fixture) -> Result<Vec<Check>> {
    let m = &fx.model;
    let names = m.names();
    let order = fx.truncation.nh;
    let kc = KoszulComplex::new(m, order);
    let jp = fx.momentum_perturbation.with_order(order);
    let dp = kc.chain_basis(2, 2);
    let cp: Vec<PolyMultivector> =
        dp.iter().filter(|x| x.keys().all(|k| k.wedge == 0 && m.alpha_degree(k) == 0)).cloned().collect();
    let mut out = Vec::new();
    let he = kc.he_data();
    for c in he.check(&cp, &dp) {
        out.push(Check { name: format!("Koszul HE: {}", c.name), passed: c.passed, witness: c.witness });
    }
    let de = kc.deformed_he_data(&jp)?;
    for c in de.check(&cp, &dp).into_iter().chain([de.check_section(&cp)]) {
        out.push(Check { name: format!("perturbed HE: {}", c.name), passed: c.passed, witness: c.witness });
    }
    let special = perturb_special(&he, kc.perturbation_map(&jp));
    let diff = dp
        .iter()
        .map(|x| &(&de.p_of(x) - &special.p_of(x)) + &(&de.h_of(x) - &special.h_of(x)))
        .chain(cp.iter().map(|x| &de.i_of(x) - &special.i_of(x)))
        .find(|r| !r.is_zero());
    out.push(match diff {
        None => Check::pass("simplified shape: P = ι* (1 + Bh)^-1, I = prol, H = h (1 + Bh)^-1"),
        Some(r) => Check::fail("simplified shape", crate::report::format_element(&r, &names)),
    });
    let mut acyclic = Check::pass("∂h_q + h_(q-1)∂ = id for q >= 1");
    let mut degree0 = Check::pass("∂h_0 = id - prol ι*");
    for x in &dp {
        let q = x.keys().map(|k| kc.chain_degree(k)).max().unwrap_or(0);
        let r = &(&kc.differential(&kc.homotopy(x)) + &kc.homotopy(&kc.differential(x))) - x;
        if q == 0 {
            let r = &r + &kc.restriction(x);
            if !r.is_zero() && degree0.passed {
                degree0 = Check::fail(degree0.name.clone(), crate::report::format_element(x, &names));
            }
        } else if !r.is_zero() && acyclic.passed {
            acyclic = Check::fail(acyclic.name.clone(), crate::report::format_element(x, &names));
        }
    }
    out.push(acyclic);
    out.push(degree0);
    let mut equivariant = Check::pass("∂_ħ ρ(e_a) = ρ(e_a) ∂_ħ");
    'eq: for x in &dp {
        for a in 0..m.n() {
            let r = &kc.deformed_differential(&jp, &kc.rho(a, x)) - &kc.rho(a, &kc.deformed_differential(&jp, x));
            if !r.is_zero() {
                equivariant = Check::fail(
                    equivariant.name,
                    format!("e_{} on {}", a + 1, crate::report::format_element(x, &names)),
                );
                break 'eq;
            }
        }
    }
    out.push(equivariant);
    let s = m.space(order);
    let js: Vec<PolyMultivector> = (0..m.n()).map(|i| &s.coord(m.alpha_index(i)) + &jp.scaled(i)).collect();
    let functions: Vec<&PolyMultivector> = dp.iter().filter(|x| x.keys().all(|k| k.wedge == 0)).collect();
    let mut ideal = Check::pass("the ideal of J + ħJ' lies in ker ι*_ħ");
    let mut kernel = Check::pass("ker ι*_ħ lies in the ideal of J + ħJ'");
    for f in &functions {
        for j in &js {
            if !kc.deformed_restriction(&jp, &wedge(j, f)).is_zero() && ideal.passed {
                ideal = Check::fail(ideal.name.clone(), crate::report::format_element(f, &names));
            }
        }
        let k = *f - &de.i_of(&de.p_of(f));
        let hk = de.h_of(&k);
        let mut sum = PolyMultivector::zero(order);
        for (i, j) in js.iter().enumerate() {
            sum += &wedge(j, &insert_coordinate(m.alpha_index(i), &hk));
        }
        if sum != k && kernel.passed {
            kernel = Check::fail(kernel.name.clone(), crate::report::format_element(f, &names));
        }
    }
    out.push(ideal);
    out.push(kernel);
    Ok(out)
}
