//! The Koszul complex `Λ𝔤 ⊗ Pol(C × 𝔤*)` with `∂ = ι(J_0)`, its integral homotopy,
//! the deformed restriction and the reduced bracket.
//!
//! Chains live in the ambient layout of the model: `e_i ∈ Λ𝔤` is the direction bit of
//! `α_i` and `μ_i = α_i`. Degree-0 chains with no `α`-dependence are the functions on `C`.

use std::sync::Arc;

use num_traits::Zero;

use super::{perturb, HomotopyEquivalenceData};
use crate::equivariant::probes::exponent_vectors;
use crate::equivariant::reduction::exp_action;
use crate::equivariant::{MomentumPerturbation, ProductModel};
use crate::error::{Error, Result};
use crate::graded::scalar::frac;
use crate::graded::GradedElement;
use crate::linfty::LinearMap;
use crate::poly::{insert_coordinate, partial, poisson_bracket, schouten, wedge, Mono, PolyMultivector};

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    model: ProductModel,
    order: usize,
}

impl KoszulComplex {
    pub fn new(model: &ProductModel, order: usize) -> Self {
        KoszulComplex { model: model.clone(), order }
    }

    pub fn model(&self) -> &ProductModel {
        &self.model
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The number of `e_i` factors.
    pub fn chain_degree(&self, k: &Mono) -> u32 {
        (k.wedge & self.model.alpha_mask()).count_ones()
    }

    /// `e_I ⊗ x^a` over `μ` and `C` coordinates with `|I| ≤ max_q` and `|a| ≤ max_degree`.
    pub fn chain_basis(&self, max_degree: u32, max_q: u32) -> Vec<PolyMultivector> {
        let m = &self.model;
        let s = m.space(self.order);
        let dim = m.n() + m.m();
        let mut out = Vec::new();
        for exps in exponent_vectors(dim, max_degree) {
            for bits in 0..(1u64 << m.n()) {
                if bits.count_ones() > max_q {
                    continue;
                }
                let dirs: Vec<usize> = (0..m.n()).filter(|&i| bits & (1 << i) != 0).map(|i| m.alpha_index(i)).collect();
                out.push(s.term(frac(1, 1), &exps, &dirs));
            }
        }
        out
    }

    /// Whether `x` is a chain: no Sym𝔤* part and no `C` directions.
    pub fn is_chain(&self, x: &PolyMultivector) -> bool {
        x.keys().all(|k| k.sym_degree() == 0 && k.wedge & !self.model.alpha_mask() == 0)
    }

    /// `∂x = Σ_i μ_i ι(e^i) x`.
    pub fn differential(&self, x: &PolyMultivector) -> PolyMultivector {
        let s = self.model.space(x.order());
        let mut out = PolyMultivector::zero(x.order());
        for i in 0..self.model.n() {
            let a = self.model.alpha_index(i);
            let d = insert_coordinate(a, x);
            if !d.is_zero() {
                out += &wedge(&s.coord(a), &d);
            }
        }
        out
    }

    /// `B x = Σ_i ħJ'_i ι(e^i) x`.
    pub fn perturbation(&self, jp: &MomentumPerturbation, x: &PolyMultivector) -> PolyMultivector {
        let mut out = PolyMultivector::zero(x.order());
        for i in 0..self.model.n() {
            let d = insert_coordinate(self.model.alpha_index(i), x);
            if !d.is_zero() {
                out += &wedge(&jp.scaled(i).with_order(x.order()), &d);
            }
        }
        out
    }

    /// `∂_ħ = ∂ + B`.
    pub fn deformed_differential(&self, jp: &MomentumPerturbation, x: &PolyMultivector) -> PolyMultivector {
        &self.differential(x) + &self.perturbation(jp, x)
    }

    /// `h_q(x) = e_i ∧ ∫₀¹ t^q ∂x/∂μ_i(c, tμ) dt` on chains of degree `q`: each monomial of
    /// `μ`-degree `d` in `∂x/∂μ_i` gets the weight `1/(q + d + 1)`.
    pub fn homotopy(&self, x: &PolyMultivector) -> PolyMultivector {
        let s = self.model.space(x.order());
        let mut out = PolyMultivector::zero(x.order());
        for (k, c) in x.iter() {
            let q = self.chain_degree(k);
            let term = PolyMultivector::term(k.clone(), c.clone());
            for i in 0..self.model.n() {
                let a = self.model.alpha_index(i);
                if k.exps[a] == 0 {
                    continue;
                }
                let d = self.model.alpha_degree(k) - 1;
                let t = wedge(&s.partial(a), &partial(&term, a));
                out.add_scaled(&t, &frac(1, (q + d + 1) as i64));
            }
        }
        out
    }

    /// `ι*`: restriction to `μ = 0` of degree-0 chains.
    pub fn restriction(&self, x: &PolyMultivector) -> PolyMultivector {
        x.filter(|k| k.wedge == 0 && self.model.alpha_degree(k) == 0)
    }

    /// `prol`: functions on `C` as `μ`-independent chains.
    pub fn prolongation(&self, f: &PolyMultivector) -> Result<PolyMultivector> {
        if let Some(k) = f.keys().find(|k| k.wedge != 0 || k.sym_degree() != 0 || self.model.alpha_degree(k) != 0) {
            return Err(Error::Contract(format!("not a function on C: {k:?}")));
        }
        Ok(f.clone())
    }

    /// `prol: (Pol(C), 0) ⇄ (Λ𝔤 ⊗ Pol(C × 𝔤*), ∂): ι*, h`.
    pub fn he_data(&self) -> HomotopyEquivalenceData<Mono, Mono> {
        let order = self.order;
        let (k1, k2, k3) = (self.clone(), self.clone(), self.clone());
        HomotopyEquivalenceData {
            order,
            d_c: Arc::new(move |_: &Mono| GradedElement::zero(order)),
            d_d: Arc::new(move |k: &Mono| k1.differential(&PolyMultivector::basis(k.clone(), order))),
            p: Arc::new(move |k: &Mono| k2.restriction(&PolyMultivector::basis(k.clone(), order))),
            i: Arc::new(move |k: &Mono| PolyMultivector::basis(k.clone(), order)),
            h: Arc::new(move |k: &Mono| k3.homotopy(&PolyMultivector::basis(k.clone(), order))),
        }
    }

    pub fn perturbation_map(&self, jp: &MomentumPerturbation) -> LinearMap<Mono, Mono> {
        let (kc, jp, order) = (self.clone(), jp.with_order(self.order), self.order);
        Arc::new(move |k: &Mono| kc.perturbation(&jp, &PolyMultivector::basis(k.clone(), order)))
    }

    /// The HE data for `∂_ħ`, from the perturbation lemma.
    pub fn deformed_he_data(&self, jp: &MomentumPerturbation) -> Result<HomotopyEquivalenceData<Mono, Mono>> {
        let s = self.model.space(self.order);
        let witnesses: Vec<PolyMultivector> =
            (0..self.model.n()).map(|i| s.partial(self.model.alpha_index(i))).collect();
        perturb(&self.he_data(), self.perturbation_map(jp), &witnesses)
    }

    /// `ι*_ħ = ι* Σ_k (−ι(ħJ') h_0)^k`.
    pub fn deformed_restriction(&self, jp: &MomentumPerturbation, f: &PolyMultivector) -> PolyMultivector {
        let mut out = f.clone();
        let mut term = f.clone();
        for _ in 0..=self.order {
            term = -&self.perturbation(jp, &self.homotopy(&term));
            if term.is_zero() {
                break;
            }
            out += &term;
        }
        self.restriction(&out)
    }

    /// `ρ(e_a) = ad(e_a) ⊗ id − id ⊗ 𝓛_{(e_a)_M}` on chains.
    pub fn rho(&self, a: usize, x: &PolyMultivector) -> PolyMultivector {
        let order = x.order();
        let s = self.model.space(order);
        let n = self.model.n();
        let mut out = PolyMultivector::zero(order);
        // ad(e_a) e_j = f^k_{aj} e_k, extended as a derivation
        for j in 0..n {
            let d = insert_coordinate(self.model.alpha_index(j), x);
            if d.is_zero() {
                continue;
            }
            for k in 0..n {
                let f = self.model.algebra().f(a, j, k);
                if !f.is_zero() {
                    out.add_scaled(&wedge(&s.partial(self.model.alpha_index(k)), &d), f);
                }
            }
        }
        // the field acts on coefficients only
        let field = self.model.field_m(a, order);
        for (k, c) in x.iter() {
            let mut coeff = k.clone();
            coeff.wedge = 0;
            let mut dirs = Mono::one(k.nsym(), k.dim());
            dirs.wedge = k.wedge;
            let fc = schouten(&field, &PolyMultivector::term(coeff, c.clone()));
            if !fc.is_zero() {
                out -= &wedge(&fc, &PolyMultivector::basis(dirs, order));
            }
        }
        out
    }

    /// `{f, g}_red = ι*_ħ{prol f, prol g}_π` as a function on `C`.
    pub fn reduced_bracket_on_c(
        &self,
        pi: &PolyMultivector,
        jp: &MomentumPerturbation,
        f: &PolyMultivector,
        g: &PolyMultivector,
    ) -> Result<PolyMultivector> {
        let b = poisson_bracket(&pi.with_order(self.order), &self.prolongation(f)?, &self.prolongation(g)?);
        Ok(self.deformed_restriction(jp, &b))
    }

    /// Validates `[π, π] = 0` and `[π, J + ħJ'] = λ`.
    pub fn check_momentum_map(&self, pi: &PolyMultivector, jp: &MomentumPerturbation) -> Result<()> {
        let order = self.order;
        let pi = pi.with_order(order);
        let pp = schouten(&pi, &pi);
        if !pp.is_zero() {
            return Err(Error::Contract(format!("[π, π] ≠ 0: {pp:?}")));
        }
        let mut j = self.model.momentum(order);
        let s = self.model.space(order);
        for i in 0..self.model.n() {
            j += &wedge(&s.sym(i), &jp.scaled(i).with_order(order));
        }
        let mut r = schouten(&j, &pi);
        r -= &self.model.curvature(order);
        if !r.is_zero() {
            return Err(Error::Contract(format!("J + ħJ' is not a momentum map for π: {r:?}")));
        }
        Ok(())
    }

    /// `π_red = Σ_{a<b} {u_a, u_b}_red ∂_a ∧ ∂_b` on `M_red`, ambient layout.
    pub fn reduced_structure(&self, pi: &PolyMultivector, jp: &MomentumPerturbation) -> Result<PolyMultivector> {
        self.check_momentum_map(pi, jp)?;
        let m = &self.model;
        let s = m.space(self.order);
        let mut out = s.zero();
        for a in 0..m.m_red() {
            for b in a + 1..m.m_red() {
                let (ua, ub) = (m.c_index(a), m.c_index(b));
                let f = self.reduced_bracket_on_c(pi, jp, &s.coord(ua), &s.coord(ub))?;
                out += &wedge(&self.descend(&f)?, &wedge(&s.partial(ua), &s.partial(ub)));
            }
        }
        Ok(out)
    }

    /// `(π*)^{-1}`: an invariant function on `C` as a function on `M_red` (fiber set to 0).
    pub fn descend(&self, f: &PolyMultivector) -> Result<PolyMultivector> {
        if !self.model.is_invariant(f) {
            return Err(Error::Contract(format!("reduced bracket is not invariant: {f:?}")));
        }
        let lo = self.model.c_index(self.model.m_red());
        Ok(f.filter(|k| k.exps[lo..].iter().all(|&e| e == 0)))
    }

    /// `T_red(f) = (π*)^{-1} ι*_ħ' T(prol π* f)` for `T = exp(X)`, after checking that `T`
    /// maps `(π, J + ħJ')` to `(π', J + ħJ'')` and that `X` is invariant.
    pub fn transport_equivalence(
        &self,
        x: &PolyMultivector,
        source: (&PolyMultivector, &MomentumPerturbation),
        target: (&PolyMultivector, &MomentumPerturbation),
        f: &PolyMultivector,
    ) -> Result<PolyMultivector> {
        let order = self.order;
        let x = x.with_order(order);
        if x.keys().any(|k| k.arity() != 1 || k.sym_degree() != 0) || x.min_valuation().is_some_and(|v| v == 0) {
            return Err(Error::Contract("X must be a vector field of order ħ".into()));
        }
        if !self.model.is_invariant(&x) {
            return Err(Error::Contract("X is not invariant".into()));
        }
        let moved = exp_action(&x, &source.0.with_order(order));
        if moved != target.0.with_order(order) {
            return Err(Error::Contract("exp(X) does not map π to π'".into()));
        }
        let s = self.model.space(order);
        for i in 0..self.model.n() {
            let a = s.coord(self.model.alpha_index(i));
            let lhs = exp_action(&x, &(&a + &source.1.scaled(i).with_order(order)));
            if lhs != &a + &target.1.scaled(i).with_order(order) {
                return Err(Error::Contract(format!("exp(X) does not intertwine the momentum component {}", i + 1)));
            }
        }
        let tf = exp_action(&x, &self.prolongation(&f.with_order(order))?);
        self.descend(&self.deformed_restriction(target.1, &tf))
    }
}
