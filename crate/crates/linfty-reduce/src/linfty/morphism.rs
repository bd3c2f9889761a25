//! L∞-morphisms given by Taylor coefficients `F_k`, their coalgebra extension,
//! the order-by-order morphism check and the Maurer–Cartan pushforward.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::structure::{coderivation_component_on, LinearMap, LinftyStructure, WordMap};
use crate::error::{Error, Result};
use crate::graded::scalar::{factorial, int};
use crate::graded::sign::{koszul_sign_unchecked, set_partitions};
use crate::graded::{BasisKey, GradedElement, SymElement};

#[derive(Clone)]
pub struct LinftyMorphism<A: BasisKey, B: BasisKey> {
    pub order: usize,
    components: Vec<WordMap<A, B>>,
}

impl<A: BasisKey, B: BasisKey> LinftyMorphism<A, B> {
    /// Components `F_1, …, F_K`; the arity cap is `K`.
    pub fn new(order: usize, components: Vec<WordMap<A, B>>) -> Self {
        LinftyMorphism { order, components }
    }

    /// `F_1 = f`, `F_k = 0` for `2 ≤ k ≤ arity_cap`.
    pub fn strict(order: usize, f: LinearMap<A, B>, arity_cap: usize) -> Self {
        let mut components: Vec<WordMap<A, B>> = vec![Arc::new(move |w: &[A]| f(&w[0]))];
        for _ in 1..arity_cap {
            components.push(Arc::new(move |_: &[A]| GradedElement::zero(order)));
        }
        LinftyMorphism { order, components }
    }

    pub fn arity_cap(&self) -> usize {
        self.components.len()
    }

    /// Replaces `F_k`.
    pub fn with_component(mut self, k: usize, f: WordMap<A, B>) -> Self {
        self.components[k - 1] = f;
        self
    }

    pub fn component_map(&self, k: usize) -> Result<&WordMap<A, B>> {
        if k == 0 || k > self.components.len() {
            return Err(Error::Capacity(format!("F_{k} requested with arity cap {}", self.components.len())));
        }
        Ok(&self.components[k - 1])
    }

    pub fn component(&self, k: usize, word: &[A]) -> Result<GradedElement<B>> {
        Ok(self.component_map(k)?(word))
    }

    /// `F_k` on the arity-`k` part of a word-sum.
    pub fn component_on(&self, k: usize, w: &SymElement<A>) -> Result<GradedElement<B>> {
        let f = self.component_map(k)?.clone();
        let words: Vec<(&Vec<A>, _)> = w.iter().filter(|(word, _)| word.len() == k).collect();
        let vals = crate::par::map(&words, |(word, _)| f(word));
        let mut out = GradedElement::zero(w.order());
        for ((_, c), v) in words.iter().zip(vals) {
            out.add_mul_series(&v, c);
        }
        Ok(out)
    }

    /// `(g ∘ F)_k = g ∘ F_k` for a strict map `g` on the target.
    pub fn then_strict<C: BasisKey>(&self, g: LinearMap<B, C>) -> LinftyMorphism<A, C> {
        let components = self
            .components
            .iter()
            .map(|f| {
                let f = f.clone();
                let g = g.clone();
                let h: WordMap<A, C> = Arc::new(move |w: &[A]| f(w).map_linear(|k| g(k)));
                h
            })
            .collect();
        LinftyMorphism { order: self.order, components }
    }
}

/// Caches a word map on canonical words.
pub fn memoized<A: BasisKey, B: BasisKey>(
    f: impl Fn(&[A]) -> GradedElement<B> + Send + Sync + 'static,
) -> WordMap<A, B> {
    let memo: Mutex<HashMap<Vec<A>, GradedElement<B>>> = Mutex::new(HashMap::new());
    Arc::new(move |w: &[A]| {
        if let Some(v) = memo.lock().unwrap().get(w) {
            return v.clone();
        }
        let v = f(w);
        memo.lock().unwrap().insert(w.to_vec(), v.clone());
        v
    })
}

/// `F^j_n(w)`: sum over set partitions into `j` blocks of
/// `ε · F_{|b_1|}(x_{b_1}) ∨ … ∨ F_{|b_j|}(x_{b_j})`, blocks ordered by their minima.
pub fn morphism_component<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    j: usize,
    word: &[A],
) -> Result<SymElement<B>> {
    let n = word.len();
    let order = f.order;
    if j == 0 {
        return Ok(if n == 0 { SymElement::unit(order) } else { SymElement::zero(order) });
    }
    let degrees: Vec<i32> = word.iter().map(BasisKey::shifted_degree).collect();
    let mut out = SymElement::zero(order);
    for blocks in set_partitions(n, j) {
        let sigma: Vec<usize> = blocks.iter().flatten().copied().collect();
        let eps = koszul_sign_unchecked(&sigma, &degrees);
        let mut prod = SymElement::unit(order);
        for b in &blocks {
            let sub: Vec<A> = b.iter().map(|&i| word[i].clone()).collect();
            let v = f.component(b.len(), &sub)?;
            if v.is_zero() {
                prod = SymElement::zero(order);
                break;
            }
            prod = prod.product(&SymElement::from_element(&v));
        }
        out.add_scaled(&prod, &int(eps as i64));
    }
    Ok(out)
}

pub fn morphism_component_on<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    j: usize,
    w: &SymElement<A>,
) -> Result<SymElement<B>> {
    let mut out = SymElement::zero(w.order());
    for (word, c) in w.iter() {
        out.add_mul_series(&morphism_component(f, j, word)?, c);
    }
    Ok(out)
}

/// The coalgebra morphism `F(w) = Σ_j F^j_n(w)`.
pub fn coalgebra_morphism_apply<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    word: &[A],
) -> Result<SymElement<B>> {
    let n = word.len();
    if n > f.arity_cap() {
        return Err(Error::Capacity(format!("word of length {n} exceeds arity cap {}", f.arity_cap())));
    }
    let mut out = SymElement::zero(f.order);
    for j in 0..=n {
        out.add_scaled(&morphism_component(f, j, word)?, &int(1));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrderCheck {
    pub order: usize,
    pub probes: usize,
    pub passed: bool,
    /// First failing probe and its residual.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct MorphismReport {
    pub checks: Vec<OrderCheck>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Largest `m` such that every checked order `≤ m` passes.
    pub fn verified_order(&self) -> usize {
        let mut sorted = self.checks.clone();
        sorted.sort_by_key(|c| c.order);
        let mut v = 0;
        for c in sorted {
            if !c.passed {
                break;
            }
            v = c.order;
        }
        v
    }
}

/// Residual of the order-`m` morphism equation
/// `Σ_ℓ F_ℓ(Q^ℓ_{A,m} w) − Σ_ℓ Q_{B,ℓ}(F^ℓ_m w)` on one word-sum of arity `m`.
pub fn morphism_residual<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    source: &LinftyStructure<A>,
    target: &LinftyStructure<B>,
    m: usize,
    w: &SymElement<A>,
) -> Result<GradedElement<B>> {
    let mut res = GradedElement::zero(f.order);
    for l in 1..=m + 1 {
        let k = m + 1 - l;
        if source.vanishes(k) {
            continue;
        }
        if k > source.arity_cap {
            return Err(Error::Capacity(format!("source Q_{k} beyond cap")));
        }
        let qw = coderivation_component_on(source, m, l, w)?;
        if qw.is_zero() {
            continue;
        }
        res += &f.component_on(l, &qw)?;
    }
    if m == 0 {
        res -= &target.q0;
    }
    for l in 1..=m {
        if target.vanishes(l) {
            continue;
        }
        let fw = morphism_component_on(f, l, w)?;
        res -= &target.q_on(l, &fw)?;
    }
    Ok(res)
}

/// Evaluates the order-`m` equation on every probe tuple of length `m`.
pub fn check_linfty_morphism<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    source: &LinftyStructure<A>,
    target: &LinftyStructure<B>,
    m: usize,
    probes: &[Vec<GradedElement<A>>],
) -> Result<OrderCheck> {
    let tuples: Vec<&Vec<GradedElement<A>>> = probes.iter().filter(|p| p.len() == m).collect();
    let results = crate::par::map(&tuples, |p| {
        let refs: Vec<&GradedElement<A>> = p.iter().collect();
        let w = SymElement::product_of(&refs, f.order);
        morphism_residual(f, source, target, m, &w)
    });
    let mut witness = None;
    for (p, r) in tuples.iter().zip(results) {
        let r = r?;
        if !r.is_zero() && witness.is_none() {
            witness = Some(format!("probe {:?} residual {:?}", p, r));
        }
    }
    Ok(OrderCheck { order: m, probes: tuples.len(), passed: witness.is_none(), witness })
}

/// Runs [`check_linfty_morphism`] for each order in `orders`.
pub fn check_orders<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    source: &LinftyStructure<A>,
    target: &LinftyStructure<B>,
    orders: impl IntoIterator<Item = usize>,
    probes: &[Vec<GradedElement<A>>],
) -> Result<MorphismReport> {
    let mut report = MorphismReport::default();
    for m in orders {
        report.checks.push(check_linfty_morphism(f, source, target, m, probes)?);
    }
    Ok(report)
}

/// `π_F = Σ_{n≥1} 1/n! F_n(π^{∨n})`, stopping once `π^{∨n}` vanishes by truncation.
pub fn mc_pushforward<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    pi: &GradedElement<A>,
) -> Result<GradedElement<B>> {
    pushforward_impl(f, pi, None)
}

/// As [`mc_pushforward`] for classical elements whose series is known to stop
/// after `max_terms` terms.
pub fn mc_pushforward_bounded<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    pi: &GradedElement<A>,
    max_terms: usize,
) -> Result<GradedElement<B>> {
    pushforward_impl(f, pi, Some(max_terms))
}

fn pushforward_impl<A: BasisKey, B: BasisKey>(
    f: &LinftyMorphism<A, B>,
    pi: &GradedElement<A>,
    max_terms: Option<usize>,
) -> Result<GradedElement<B>> {
    let mut out = GradedElement::zero(f.order);
    let base = SymElement::from_element(pi);
    let mut power = SymElement::unit(pi.order());
    for n in 1.. {
        if max_terms.is_some_and(|t| n > t) {
            break;
        }
        power = power.product(&base);
        if power.is_zero() {
            break;
        }
        if n > f.arity_cap() {
            return Err(Error::Capacity(format!(
                "pushforward series has a nonzero term at arity {n} beyond the cap {}",
                f.arity_cap()
            )));
        }
        out.add_scaled(&f.component_on(n, &power)?, &factorial(n).recip());
    }
    Ok(out)
}
