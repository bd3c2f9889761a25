//! Deformation retracts of DGLAs with side conditions and the explicit
//! recursive L∞-extensions of their projection and inclusion.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::scalar::{factorial, frac, int};
use crate::graded::sign::{koszul_sign_unchecked, permutations};
use crate::graded::{BasisKey, GradedElement, SymElement};
use crate::linfty::{
    coderivation_component_on, memoized, morphism::morphism_component_on, LinearMap, LinftyMorphism, LinftyStructure,
    WordMap,
};

/// Which of the two maps is known to respect brackets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SideFlag {
    pub i_is_dgla_morphism: bool,
    pub p_is_dgla_morphism: bool,
}

/// `i: A → B`, `p: B → A`, `h: B → B` with `pi = id`, `hd + dh = id − ip`,
/// `h² = 0`, `hi = 0`, `ph = 0`.
#[derive(Clone)]
pub struct DeformationRetract<A: BasisKey, B: BasisKey> {
    pub a: LinftyStructure<A>,
    pub b: LinftyStructure<B>,
    pub i: LinearMap<A, B>,
    pub p: LinearMap<B, A>,
    pub h: LinearMap<B, B>,
    pub flags: SideFlag,
}

fn apply<X: BasisKey, Y: BasisKey>(f: &LinearMap<X, Y>, x: &GradedElement<X>) -> GradedElement<Y> {
    x.map_linear(|k| f(k))
}

fn contract(what: &str, x: &dyn std::fmt::Debug, r: &dyn std::fmt::Debug) -> Error {
    Error::Contract(format!("{what} fails on {x:?}: residual {r:?}"))
}

impl<A: BasisKey, B: BasisKey> DeformationRetract<A, B> {
    pub fn order(&self) -> usize {
        self.b.order
    }

    pub fn i_of(&self, x: &GradedElement<A>) -> GradedElement<B> {
        apply(&self.i, x)
    }

    pub fn p_of(&self, x: &GradedElement<B>) -> GradedElement<A> {
        apply(&self.p, x)
    }

    pub fn h_of(&self, x: &GradedElement<B>) -> GradedElement<B> {
        apply(&self.h, x)
    }

    fn d_a(&self, x: &GradedElement<A>) -> Result<GradedElement<A>> {
        Ok(-&self.a.q_on(1, &SymElement::from_element(x))?)
    }

    fn d_b(&self, x: &GradedElement<B>) -> Result<GradedElement<B>> {
        Ok(-&self.b.q_on(1, &SymElement::from_element(x))?)
    }

    /// Checks the retract identities exactly on the given probes.
    pub fn check(&self, probes_a: &[GradedElement<A>], probes_b: &[GradedElement<B>]) -> Result<()> {
        for x in probes_a {
            let ix = self.i_of(x);
            let r = &self.p_of(&ix) - x;
            if !r.is_zero() {
                return Err(contract("p∘i = id", x, &r));
            }
            let r = self.h_of(&ix);
            if !r.is_zero() {
                return Err(contract("h∘i = 0", x, &r));
            }
            let r = &self.d_b(&ix)? - &self.i_of(&self.d_a(x)?);
            if !r.is_zero() {
                return Err(contract("i is a chain map", x, &r));
            }
        }
        for y in probes_b {
            let hy = self.h_of(y);
            let r = self.h_of(&hy);
            if !r.is_zero() {
                return Err(contract("h∘h = 0", y, &r));
            }
            let r = self.p_of(&hy);
            if !r.is_zero() {
                return Err(contract("p∘h = 0", y, &r));
            }
            let r = &self.p_of(&self.d_b(y)?) - &self.d_a(&self.p_of(y))?;
            if !r.is_zero() {
                return Err(contract("p is a chain map", y, &r));
            }
            let mut r = &self.h_of(&self.d_b(y)?) + &self.d_b(&hy)?;
            r -= y;
            r += &self.i_of(&self.p_of(y));
            if !r.is_zero() {
                return Err(contract("hd + dh = id − ip", y, &r));
            }
        }
        Ok(())
    }

    /// Checks the flagged bracket compatibilities on all probe pairs.
    pub fn check_flags(&self, probes_a: &[GradedElement<A>], probes_b: &[GradedElement<B>]) -> Result<()> {
        if !self.flags.i_is_dgla_morphism && !self.flags.p_is_dgla_morphism {
            return Err(Error::Contract("neither i nor p is flagged as a DGLA morphism".into()));
        }
        let order = self.order();
        if self.flags.i_is_dgla_morphism {
            for x in probes_a {
                for y in probes_a {
                    let lhs = self.i_of(&self.a.q_on(2, &SymElement::product_of(&[x, y], order))?);
                    let (ix, iy) = (self.i_of(x), self.i_of(y));
                    let rhs = self.b.q_on(2, &SymElement::product_of(&[&ix, &iy], order))?;
                    if lhs != rhs {
                        return Err(contract("i preserves brackets", &(x, y), &(&lhs - &rhs)));
                    }
                }
            }
        }
        if self.flags.p_is_dgla_morphism {
            for x in probes_b {
                for y in probes_b {
                    let lhs = self.p_of(&self.b.q_on(2, &SymElement::product_of(&[x, y], order))?);
                    let (px, py) = (self.p_of(x), self.p_of(y));
                    let rhs = self.a.q_on(2, &SymElement::product_of(&[&px, &py], order))?;
                    if lhs != rhs {
                        return Err(contract("p preserves brackets", &(x, y), &(&lhs - &rhs)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `K_n = 1/n! Σ_{i<n} Σ_{σ∈S_n} ε(σ)/(n−i) · ipx_σ(1) ∨ … ∨ ipx_σ(i) ∨ x_σ(i+1) ∨ … ∨ x_σ(n)`.
pub fn k_operator<A: BasisKey, B: BasisKey>(r: &DeformationRetract<A, B>, word: &[B]) -> SymElement<B> {
    let n = word.len();
    let order = r.order();
    let degrees: Vec<i32> = word.iter().map(BasisKey::shifted_degree).collect();
    let plain: Vec<SymElement<B>> = word.iter().map(|x| SymElement::word(vec![x.clone()], order)).collect();
    let projected: Vec<SymElement<B>> = word.iter().map(|x| SymElement::from_element(&r.i_of(&(r.p)(x)))).collect();
    let mut out = SymElement::zero(order);
    let nf = factorial(n).recip();
    for sigma in permutations(n) {
        let eps = koszul_sign_unchecked(&sigma, &degrees);
        for i in 0..n {
            let mut prod = SymElement::unit(order);
            for (pos, &j) in sigma.iter().enumerate() {
                prod = prod.product(if pos < i { &projected[j] } else { &plain[j] });
                if prod.is_zero() {
                    break;
                }
            }
            out.add_scaled(&prod, &(&nf * frac(eps as i64, (n - i) as i64)));
        }
    }
    out
}

/// `H̃_n(x_1 ∨ … ∨ x_n) = −Σ_{Sh(1,n−1)} ε h(x_σ(1)) ∨ x_σ(2) ∨ … ∨ x_σ(n)`.
pub fn h_tilde<A: BasisKey, B: BasisKey>(r: &DeformationRetract<A, B>, word: &[B]) -> SymElement<B> {
    let order = r.order();
    let mut out = SymElement::zero(order);
    let mut before = 0;
    for (j, x) in word.iter().enumerate() {
        let d = x.shifted_degree();
        let eps = if (d * before) & 1 == 0 { -1 } else { 1 };
        before += d;
        let hx = (r.h)(x);
        if hx.is_zero() {
            continue;
        }
        let rest: Vec<B> = word.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, y)| y.clone()).collect();
        let t = SymElement::from_element(&hx).product(&SymElement::word(rest, order));
        out.add_scaled(&t, &int(eps));
    }
    out
}

/// `H_n(w) = K_n(H̃_n(w))` on a word of length `n`.
pub fn homotopy_extension<A: BasisKey, B: BasisKey>(
    r: &DeformationRetract<A, B>,
    word: &[B],
    arity_cap: usize,
) -> Result<SymElement<B>> {
    if word.len() > arity_cap {
        return Err(Error::Capacity(format!("H_{} requested with arity cap {arity_cap}", word.len())));
    }
    let ht = h_tilde(r, word);
    Ok(ht.flat_map(|w| k_operator(r, w)))
}

pub fn homotopy_extension_on<A: BasisKey, B: BasisKey>(
    r: &DeformationRetract<A, B>,
    w: &SymElement<B>,
    arity_cap: usize,
) -> Result<SymElement<B>> {
    let mut out = SymElement::zero(w.order());
    for (word, c) in w.iter() {
        out.add_mul_series(&homotopy_extension(r, word, arity_cap)?, c);
    }
    Ok(out)
}

/// `L_{∞,k+1} = Σ_{ℓ=2}^{k+1} Q^1_{T,ℓ} F^ℓ_{k+1} − Σ_{ℓ=1}^{k} F_ℓ Q^ℓ_{S,k+1}` on the
/// length-`k+1` part of `w`, for `F: S → T` known up to order `k`.
pub fn linfty_obstruction<S: BasisKey, T: BasisKey>(
    f: &LinftyMorphism<S, T>,
    source: &LinftyStructure<S>,
    target: &LinftyStructure<T>,
    k: usize,
    w: &SymElement<S>,
) -> Result<GradedElement<T>> {
    let w = w.arity(k + 1);
    let mut out = GradedElement::zero(f.order);
    for l in 2..=k + 1 {
        if target.vanishes(l) {
            continue;
        }
        let fw = morphism_component_on(f, l, &w)?;
        out += &target.q_on(l, &fw)?;
    }
    for l in 1..=k {
        if source.vanishes(k + 2 - l) {
            continue;
        }
        let qw = coderivation_component_on(source, k + 1, l, &w)?;
        if qw.is_zero() {
            continue;
        }
        out -= &f.component_on(l, &qw)?;
    }
    Ok(out)
}

fn word_map<X: BasisKey, Y: BasisKey>(f: LinearMap<X, Y>) -> WordMap<X, Y> {
    Arc::new(move |w: &[X]| f(&w[0]))
}

/// `P_1 = p`, `P_{k+1} = L_{∞,k+1} ∘ H_{k+1}`.
pub fn build_projection<A: BasisKey, B: BasisKey>(
    r: &DeformationRetract<A, B>,
    arity_cap: usize,
) -> Result<LinftyMorphism<B, A>> {
    if !r.flags.i_is_dgla_morphism {
        return Err(Error::Contract("the projection extension needs i to be a DGLA morphism".into()));
    }
    let order = r.order();
    let mut comps: Vec<WordMap<B, A>> = vec![word_map(r.p.clone())];
    for k in 1..arity_cap {
        let prefix = LinftyMorphism::new(order, comps.clone());
        let r = r.clone();
        comps.push(memoized(move |w: &[B]| {
            let hw = homotopy_extension(&r, w, k + 1).expect("within cap");
            linfty_obstruction(&prefix, &r.b, &r.a, k, &hw).expect("prefix covers arity k")
        }));
    }
    Ok(LinftyMorphism::new(order, comps))
}

/// `I_1 = i`, `I_k = h ∘ L_{∞,k}`.
pub fn build_inclusion<A: BasisKey, B: BasisKey>(
    r: &DeformationRetract<A, B>,
    arity_cap: usize,
) -> Result<LinftyMorphism<A, B>> {
    if !r.flags.p_is_dgla_morphism {
        return Err(Error::Contract("the inclusion extension needs p to be a DGLA morphism".into()));
    }
    let order = r.order();
    let mut comps: Vec<WordMap<A, B>> = vec![word_map(r.i.clone())];
    for k in 1..arity_cap {
        let prefix = LinftyMorphism::new(order, comps.clone());
        let r = r.clone();
        comps.push(memoized(move |w: &[A]| {
            let ws = SymElement::word(w.to_vec(), order);
            let l = linfty_obstruction(&prefix, &r.a, &r.b, k, &ws).expect("prefix covers arity k");
            r.h_of(&l)
        }));
    }
    Ok(LinftyMorphism::new(order, comps))
}

/// The second form `I_k = h ∘ Q^1_{B,2} ∘ I^2_k`, from a prefix known up to `k − 1`.
pub fn inclusion_component_alt<A: BasisKey, B: BasisKey>(
    r: &DeformationRetract<A, B>,
    prefix: &LinftyMorphism<A, B>,
    word: &[A],
) -> Result<GradedElement<B>> {
    let ws = SymElement::word(word.to_vec(), r.order());
    let i2 = morphism_component_on(prefix, 2, &ws)?;
    Ok(r.h_of(&r.b.q_on(2, &i2)?))
}

/// Closed form `P_2(X_1 ∨ X_2) = p((−1)^{|X_1|}[hX_1, X_2] − [X_1, hX_2])` for a retract
/// with `i` a DGLA morphism, `|X_1|` the shifted degree and the bracket recovered from `Q_2`.
///
/// Here `h` satisfies `hd + dh = id − ip` for the DGLA differential `d`; written with
/// `h' = −h` (a homotopy for `Q_1 = −d`) this is `−p((−1)^{|X_1|}[h'X_1, X_2] − [X_1, h'X_2])`.
pub fn projection_p2_closed_form<A: BasisKey, B: BasisKey>(
    r: &DeformationRetract<A, B>,
    x1: &B,
    x2: &B,
) -> Result<GradedElement<A>> {
    let order = r.order();
    let bracket = |u: &GradedElement<B>, v: &GradedElement<B>| -> Result<GradedElement<B>> {
        // [u, v] = −(−1)^{|u|} Q_2(u ∨ v), shifted degree
        let mut out = GradedElement::zero(order);
        for (a, ca) in u.iter() {
            let ua = GradedElement::term(a.clone(), ca.clone());
            let q = r.b.q_on(2, &SymElement::product_of(&[&ua, v], order))?;
            if a.shifted_degree() & 1 == 0 {
                out -= &q;
            } else {
                out += &q;
            }
        }
        Ok(out)
    };
    let e1 = GradedElement::basis(x1.clone(), order);
    let e2 = GradedElement::basis(x2.clone(), order);
    let mut inner = bracket(&r.h_of(&e1), &e2)?;
    if x1.shifted_degree() & 1 != 0 {
        inner = -inner;
    }
    inner -= &bracket(&e1, &r.h_of(&e2))?;
    Ok(r.p_of(&inner))
}
