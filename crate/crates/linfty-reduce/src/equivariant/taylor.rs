//! The Taylor algebra around `C`: `J`, `λ`, `π_KKS`, the differential `∂`,
//! the homotopy of `−[J,·]` and the retract onto the Cartan shape.
//!
//! Elements are [`PolyMultivector`]s in the ambient layout of [`ProductModel`]:
//! Sym𝔤* is spanned by the `s_i`, Sym𝔤 by polynomials in `α`, Λ𝔤* by the `θ_α`.
//! For polynomial `α`-dependence the Taylor expansion is therefore a
//! re-indexing, and the Taylor bracket is the Schouten bracket.

use std::sync::Arc;

use super::model::ProductModel;
use crate::error::{Error, Result};
use crate::graded::scalar::{frac, int};
use crate::graded::GradedElement;
use crate::linfty::{Dgla, LinearMap, LinftyStructure};
use crate::poly::calculus::partial_sym;
use crate::poly::{partial, schouten, wedge, Mono, PolyMultivector};
use crate::retract::{DeformationRetract, SideFlag};

/// Elements of `T_Tay(C × 𝔤*)`.
pub type TaylorElement = PolyMultivector;

impl ProductModel {
    /// `J = e^i ⊗ e_i`, i.e. `Σ s_i α_i`.
    pub fn momentum(&self, order: usize) -> TaylorElement {
        let s = self.space(order);
        let mut j = s.zero();
        for i in 0..self.n() {
            j += &wedge(&s.sym(i), &s.coord(self.alpha_index(i)));
        }
        j
    }

    /// `λ = e^i ⊗ (e_i)_M`.
    pub fn curvature(&self, order: usize) -> TaylorElement {
        let s = self.space(order);
        let mut l = s.zero();
        for i in 0..self.n() {
            l += &wedge(&s.sym(i), &self.field_m(i, order));
        }
        l
    }

    /// `π_KKS = ½ f^k_{ij} α_k θ_{α_i} θ_{α_j} + Σ (e_i)_C ∧ θ_{α_i}`.
    pub fn kks(&self, order: usize) -> TaylorElement {
        let s = self.space(order);
        let mut pi = s.zero();
        for (i, j, k, c) in self.algebra().entries().into_iter().map(|((i, j, k), c)| (i, j, k, c)) {
            let t = wedge(&s.coord(k), &wedge(&s.partial(i), &s.partial(j)));
            pi.add_scaled(&t, &(c * frac(1, 2)));
        }
        for i in 0..self.n() {
            pi += &wedge(&self.field_c(i, order), &s.partial(self.alpha_index(i)));
        }
        pi
    }

    /// `∂ = Σ_i ι(e^i) ⊗ (e_i)_C ∧`, with `ι(e^i) = ∂/∂α_i` on Sym𝔤.
    pub fn del(&self, x: &TaylorElement) -> TaylorElement {
        let mut out = TaylorElement::zero(x.order());
        for i in 0..self.n() {
            let d = partial(x, self.alpha_index(i));
            if d.is_zero() {
                continue;
            }
            // moving (e_i)_C past the Λ𝔤* factor absorbs the Koszul sign (−1)^{|α|}
            out += &wedge(&self.field_c(i, x.order()), &d);
        }
        out
    }

    /// `[π_KKS, x]`.
    pub fn kks_differential(&self, x: &TaylorElement) -> TaylorElement {
        schouten(&self.kks(x.order()), x)
    }

    /// `δ_CE = [π_KKS, ·] − ∂`.
    pub fn delta_ce(&self, x: &TaylorElement) -> TaylorElement {
        &self.kks_differential(x) - &self.del(x)
    }

    /// `−[J, x]`.
    pub fn j_differential(&self, x: &TaylorElement) -> TaylorElement {
        -&schouten(&self.momentum(x.order()), x)
    }

    /// `h0 = Σ_ℓ θ_{α_ℓ} ∧ ∂/∂s_ℓ`, satisfying `d h0 + h0 d = (deg ξ + deg α)·id` for `d = −[J,·]`.
    pub fn j_homotopy_unnormalized(&self, x: &TaylorElement) -> TaylorElement {
        let s = self.space(x.order());
        let mut out = TaylorElement::zero(x.order());
        for l in 0..self.n() {
            let d = partial_sym(x, l);
            if !d.is_zero() {
                out += &wedge(&s.partial(self.alpha_index(l)), &d);
            }
        }
        out
    }

    /// `h = h0 / (deg ξ + deg α)`, zero in degree 0.
    pub fn j_homotopy(&self, x: &TaylorElement) -> TaylorElement {
        let mut out = TaylorElement::zero(x.order());
        for (k, c) in x.iter() {
            let w = self.koszul_degree(k);
            if w == 0 {
                continue;
            }
            let t = self.j_homotopy_unnormalized(&PolyMultivector::term(k.clone(), c.clone()));
            out.add_scaled(&t, &frac(1, w as i64));
        }
        out
    }

    /// Projection onto the Cartan shape (`ξ = 0`, no `θ_α`).
    pub fn cartan_part(&self, x: &TaylorElement) -> TaylorElement {
        x.filter(|k| self.is_cartan(k))
    }

    /// Taylor expansion of an element with polynomial `α`-dependence of degree `≤ n_t`.
    pub fn taylor_expand(&self, x: &PolyMultivector, n_t: usize) -> Result<TaylorElement> {
        if let Some(k) = x.keys().find(|k| self.alpha_degree(k) as usize > n_t) {
            return Err(Error::Capacity(format!(
                "α-degree {} exceeds the Taylor truncation N_T = {n_t}",
                self.alpha_degree(k)
            )));
        }
        Ok(x.clone())
    }

    /// Splits a curved MC element `π` of `(T_Tay, λ, −[J,·])` with `ξ`-degree 0 as
    /// `π_KKS + π_C` and validates `½[π_C, π_C] + ∂π_C = 0`.
    pub fn normal_form_split(&self, pi: &TaylorElement) -> Result<(TaylorElement, TaylorElement)> {
        let order = pi.order();
        if pi.keys().any(|k| k.sym_degree() != 0) {
            return Err(Error::Contract("π has a Sym𝔤* component".into()));
        }
        let mut residual = self.curvature(order);
        residual += &self.j_differential(pi);
        residual.add_scaled(&schouten(pi, pi), &frac(1, 2));
        if !residual.is_zero() {
            return Err(Error::Contract(format!("π is not a curved Maurer–Cartan element: {residual:?}")));
        }
        let kks = self.kks(order);
        let pi_c = pi - &kks;
        if let Some(k) = pi_c.keys().find(|k| k.wedge & self.alpha_mask() != 0) {
            return Err(Error::Contract(format!("π − π_KKS keeps a Λ𝔤* component at {k:?}")));
        }
        let mut mc = self.del(&pi_c);
        mc.add_scaled(&schouten(&pi_c, &pi_c), &frac(1, 2));
        if !mc.is_zero() {
            return Err(Error::Contract(format!("½[π_C, π_C] + ∂π_C ≠ 0: {mc:?}")));
        }
        Ok((kks, pi_c))
    }

    /// `(T_Tay, [−J,·])` as a flat DGLA.
    pub fn taylor_dgla(&self, order: usize) -> Dgla<Mono> {
        let dg = Dgla::polyvector(order);
        let j = -&self.momentum(order);
        let d = Dgla::inner_differential(&j, &dg.bracket);
        dg.with_differential(d)
    }

    /// `(T_Tay, ħλ, −[J,·])` (`hbar_power = 1`) or `(T_Tay, λ, −[J,·])` (`0`).
    pub fn taylor_curved_dgla(&self, order: usize, hbar_power: usize) -> Dgla<Mono> {
        let lambda = self.curvature(order).mul_hbar(hbar_power);
        self.taylor_dgla(order).with_curvature(lambda)
    }

    /// The Cartan shape with zero differential.
    pub fn cartan_dgla_flat(&self, order: usize) -> Dgla<Mono> {
        Dgla::polyvector(order)
    }

    /// `(T_Cart, c·∂)` where `c = ħ^{hbar_power}`.
    pub fn cartan_dgla(&self, order: usize, hbar_power: usize) -> Dgla<Mono> {
        let model = self.clone();
        let d: LinearMap<Mono, Mono> =
            Arc::new(move |k: &Mono| model.del(&PolyMultivector::basis(k.clone(), order)).mul_hbar(hbar_power));
        Dgla::polyvector(order).with_differential(d)
    }

    /// `(T_Cart, 0) ⇄ (T_Tay, −[J,·])` with `h` the normalized `j`-homotopy; `i` is a DGLA morphism.
    pub fn j_retract(&self, order: usize, arity_cap: usize) -> DeformationRetract<Mono, Mono> {
        let a = LinftyStructure::from_dgla(self.cartan_dgla_flat(order), arity_cap);
        let b = LinftyStructure::from_dgla(self.taylor_dgla(order), arity_cap);
        let i: LinearMap<Mono, Mono> = Arc::new(move |k: &Mono| PolyMultivector::basis(k.clone(), order));
        let model = self.clone();
        let p: LinearMap<Mono, Mono> = Arc::new(move |k: &Mono| {
            if model.is_cartan(k) {
                PolyMultivector::basis(k.clone(), order)
            } else {
                GradedElement::zero(order)
            }
        });
        let model = self.clone();
        let h: LinearMap<Mono, Mono> =
            Arc::new(move |k: &Mono| model.j_homotopy(&PolyMultivector::basis(k.clone(), order)));
        DeformationRetract { a, b, i, p, h, flags: SideFlag { i_is_dgla_morphism: true, p_is_dgla_morphism: false } }
    }
}

/// Scalar helper for tests and fixtures.
pub fn scaled(x: &TaylorElement, c: i64) -> TaylorElement {
    x.scale(&int(c))
}
