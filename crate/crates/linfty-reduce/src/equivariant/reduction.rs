//! Reduction to `M_red`: the projection `P` in its flat-formal and curved-classical
//! configurations, the gauge removing a formal momentum correction, the L∞ pipeline
//! `p_Cart ∘ P`, the Marsden–Weinstein oracle and the finite cohomology comparison.
//!
//! Formal Poisson structures `π` are always the full structure on `C × 𝔤*`
//! (including `π_KKS`); with a correction `J'` they enter the Taylor algebra as
//! `ħ(π − J')`, twisted by `−J`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::cartan::ConnectionData;
use super::model::ProductModel;
use super::probes::{monomials, ProbeShape};
use crate::error::{Error, Result};
use crate::graded::scalar::{factorial, frac};
use crate::graded::{BasisKey, FormalSeries, GradedElement, Scalar};
use crate::linalg::{rank, Coordinates};
use crate::linfty::{
    mc_pushforward, mc_pushforward_bounded, Dgla, LinearMap, LinftyMorphism, LinftyStructure, WordMap,
};
use crate::poly::{poisson_bracket, schouten, wedge, Mono, PolyMultivector};
use crate::retract::build_projection;

/// The formal correction `J'` of the momentum map `J + ħJ'`, one function on
/// `C × 𝔤*` per generator (stored without the factor `ħ`).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumPerturbation {
    components: Vec<PolyMultivector>,
}

impl MomentumPerturbation {
    pub fn new(model: &ProductModel, components: Vec<PolyMultivector>) -> Result<Self> {
        if components.len() != model.n() {
            return Err(Error::invalid(
                "momentum_perturbation",
                format!("expected {} components, got {}", model.n(), components.len()),
            ));
        }
        let order = components.iter().map(GradedElement::order).max().unwrap_or(0);
        for (i, f) in components.iter().enumerate() {
            if f.keys().any(|k| {
                k.nsym() != model.n() || k.dim() != model.n() + model.m() || k.sym_degree() != 0 || k.wedge != 0
            }) {
                return Err(Error::invalid(format!("momentum_perturbation[{i}]"), "expected a function on C × 𝔤*"));
            }
        }
        Ok(MomentumPerturbation { components: components.iter().map(|f| f.with_order(order)).collect() })
    }

    pub fn zero(model: &ProductModel, order: usize) -> Self {
        MomentumPerturbation { components: vec![PolyMultivector::zero(order); model.n()] }
    }

    pub fn components(&self) -> &[PolyMultivector] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GradedElement::is_zero)
    }

    pub fn with_order(&self, order: usize) -> Self {
        MomentumPerturbation { components: self.components.iter().map(|f| f.with_order(order)).collect() }
    }

    /// `ħJ'_i`.
    pub fn scaled(&self, i: usize) -> PolyMultivector {
        self.components[i].mul_hbar(1)
    }

    /// `Σ s_i J'_i`, the Sym𝔤*-degree-one form.
    pub fn as_taylor(&self, model: &ProductModel) -> PolyMultivector {
        let order = self.components.first().map_or(0, GradedElement::order);
        let s = model.space(order);
        let mut out = s.zero();
        for (i, f) in self.components.iter().enumerate() {
            out += &wedge(&s.sym(i), f);
        }
        out
    }
}

/// Outcome of the gauge recursion.
#[derive(Clone, Debug)]
pub struct GaugeResult {
    /// `X^1, X^2, …` until the remainder vanishes.
    pub steps: Vec<PolyMultivector>,
    pub x_infinity: PolyMultivector,
    /// `exp(−X^∞)(π)`, a formal Poisson structure with momentum map `J`.
    pub pi_gauged: PolyMultivector,
}

/// `exp(ad_x)(y) = Σ 1/k! ad_x^k y` for `x` of positive ħ-valuation.
pub fn exp_action(x: &PolyMultivector, y: &PolyMultivector) -> PolyMultivector {
    let mut out = y.clone();
    let mut term = y.clone();
    for k in 1.. {
        term = schouten(x, &term);
        if term.is_zero() {
            break;
        }
        out.add_scaled(&term, &factorial(k).recip());
    }
    out
}

/// Splits off one power of `ħ`; the input must have valuation at least one.
pub fn divide_hbar(x: &PolyMultivector) -> Result<PolyMultivector> {
    let order = x.order().saturating_sub(1);
    let mut out = PolyMultivector::zero(order);
    for (k, c) in x.iter() {
        if !c.coeff(0).is_zero() {
            return Err(Error::Contract(format!("expected an element of order ħ, found an ħ^0 term at {k:?}")));
        }
        let coeffs: Vec<Scalar> = c.coeffs()[1..].to_vec();
        let coeffs = if coeffs.is_empty() { vec![Scalar::zero()] } else { coeffs };
        out.add_term(k.clone(), &FormalSeries::new(coeffs)?);
    }
    Ok(out)
}

/// Finite-truncation cohomology dimensions in one `(degree, weight)` piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyComparison {
    pub degree: i32,
    pub weight: u32,
    pub taylor: usize,
    pub cartan: usize,
}

impl ProductModel {
    /// `P: (T_Tay, −[J,·]) → (T_Cart, 0)`, the transferred projection of the `j`-retract.
    pub fn taylor_projection_morphism(&self, order: usize, arity_cap: usize) -> Result<LinftyMorphism<Mono, Mono>> {
        build_projection(&self.j_retract(order, arity_cap), arity_cap)
    }

    /// `P` with every component cut to its support: all arguments `Λ𝔤*`-free and
    /// Sym𝔤*-degrees summing to `n − 1`.
    pub fn supported_projection(&self, order: usize, arity_cap: usize) -> Result<LinftyMorphism<Mono, Mono>> {
        let p = self.taylor_projection_morphism(order, arity_cap)?;
        let mut comps: Vec<WordMap<Mono, Mono>> = Vec::new();
        for k in 1..=arity_cap {
            let f = p.component_map(k)?.clone();
            let mask = self.alpha_mask();
            comps.push(Arc::new(move |w: &[Mono]| {
                let sym: u32 = w.iter().map(Mono::sym_degree).sum();
                if sym as usize + 1 != w.len() || w.iter().any(|x| x.wedge & mask != 0) {
                    GradedElement::zero(order)
                } else {
                    f(w)
                }
            }));
        }
        Ok(LinftyMorphism::new(order, comps))
    }

    /// `(T_Tay, [ħπ_KKS − J, ·])`, the flat formal source of `P`.
    pub fn flat_formal_taylor(&self, order: usize, arity_cap: usize) -> LinftyStructure<Mono> {
        let dg = Dgla::polyvector(order);
        let mut mu = self.kks(order).mul_hbar(1);
        mu -= &self.momentum(order);
        let d = Dgla::inner_differential(&mu, &dg.bracket);
        LinftyStructure::from_dgla(dg.with_differential(d), arity_cap)
    }

    /// `(T_Cart, ħ∂)`, the flat formal target of `P`.
    pub fn flat_formal_cartan(&self, order: usize, arity_cap: usize) -> LinftyStructure<Mono> {
        LinftyStructure::from_dgla(self.cartan_dgla(order, 1), arity_cap)
    }

    /// `(T_Tay, λ, −[J,·])`, the curved classical source of `P`.
    pub fn curved_classical_taylor(&self, order: usize, arity_cap: usize) -> LinftyStructure<Mono> {
        LinftyStructure::from_dgla(self.taylor_curved_dgla(order, 0), arity_cap)
    }

    /// `(T_Cart, ∂)`, the curved classical target of `P`.
    pub fn classical_cartan(&self, order: usize, arity_cap: usize) -> LinftyStructure<Mono> {
        LinftyStructure::from_dgla(self.cartan_dgla(order, 0), arity_cap)
    }

    /// `T_red = p_Cart ∘ P` from the curved Taylor algebra to `T_poly(M_red)`.
    pub fn reduction_morphism(&self, order: usize, arity_cap: usize) -> Result<LinftyMorphism<Mono, Mono>> {
        let model = self.clone();
        let p_cart: LinearMap<Mono, Mono> =
            Arc::new(move |k: &Mono| model.cartan_projection(&PolyMultivector::basis(k.clone(), order)));
        Ok(self.supported_projection(order, arity_cap)?.then_strict(p_cart))
    }

    /// `λ − [J, π] + ½[π, π]`.
    pub fn classical_mc_residual(&self, pi: &PolyMultivector) -> PolyMultivector {
        let order = pi.order();
        let mut r = self.curvature(order);
        r += &self.j_differential(pi);
        r.add_scaled(&schouten(pi, pi), &frac(1, 2));
        r
    }

    /// `ħ(π − J')` at order `N + 1` for `π`, `J'` given modulo `ħ^{N+1}`.
    pub fn formal_element(&self, pi: &PolyMultivector, jp: &MomentumPerturbation) -> PolyMultivector {
        let order = pi.order() + 1;
        let mut x = pi.with_order(order);
        x -= &jp.with_order(order).as_taylor(self);
        x.mul_hbar(1)
    }

    /// `ħλ − [J, Π] + ½[Π, Π]` for `Π = ħ(π − J')`.
    pub fn formal_mc_residual(&self, pi: &PolyMultivector, jp: &MomentumPerturbation) -> PolyMultivector {
        let x = self.formal_element(pi, jp);
        let mut r = self.curvature(x.order()).mul_hbar(1);
        r += &self.j_differential(&x);
        r.add_scaled(&schouten(&x, &x), &frac(1, 2));
        r
    }

    /// The recursion `X^1 = ħJ'_i e^i`, `X^{k+1} = −(exp(X^k)⋯exp(X^1)(J_i) − J_i − ħJ'_i) e^i`,
    /// its limit `X^∞ = log(⋯)` and the gauged structure `exp(−X^∞)(π)`.
    pub fn gauge_to_classical_momentum(&self, pi: &PolyMultivector, jp: &MomentumPerturbation) -> Result<GaugeResult> {
        let order = pi.order();
        let jp = jp.with_order(order);
        let s = self.space(order);
        let n = self.n();
        let alpha = |i: usize| s.coord(self.alpha_index(i));
        let field = |f: &[PolyMultivector]| {
            let mut x = s.zero();
            for (i, c) in f.iter().enumerate() {
                x += &wedge(c, &s.partial(self.alpha_index(i)));
            }
            x
        };
        let apply_all =
            |steps: &[PolyMultivector], f: &PolyMultivector| steps.iter().fold(f.clone(), |acc, x| exp_action(x, &acc));
        let mut steps = vec![field(&(0..n).map(|i| jp.scaled(i)).collect::<Vec<_>>())];
        loop {
            if steps.last().is_some_and(GradedElement::is_zero) {
                steps.pop();
                break;
            }
            if steps.len() > order + 1 {
                return Err(Error::Contract("gauge recursion did not terminate".into()));
            }
            let rest: Vec<PolyMultivector> = (0..n)
                .map(|i| {
                    let mut r = apply_all(&steps, &alpha(i));
                    r -= &alpha(i);
                    r -= &jp.scaled(i);
                    -r
                })
                .collect();
            steps.push(field(&rest));
        }
        // log Φ is a derivation, so X^∞ is fixed by its values on coordinates
        let mut x_inf = s.zero();
        for c in 0..n + self.m() {
            let coord = s.coord(c);
            let mut log = s.zero();
            let mut power = coord.clone();
            for j in 1.. {
                let next = apply_all(&steps, &power);
                power = &next - &power;
                if power.is_zero() {
                    break;
                }
                let sign = if j % 2 == 1 { 1 } else { -1 };
                log.add_scaled(&power, &frac(sign, j as i64));
            }
            if !log.is_zero() {
                x_inf += &wedge(&log, &s.partial(c));
            }
        }
        for i in 0..n {
            let mut r = exp_action(&x_inf, &alpha(i));
            r -= &alpha(i);
            r -= &jp.scaled(i);
            if !r.is_zero() {
                return Err(Error::Contract(format!("exp(X^∞)(J_{}) ≠ J_{} + ħJ'_{}: {r:?}", i + 1, i + 1, i + 1)));
            }
        }
        let pi_gauged = exp_action(&-&x_inf, pi);
        Ok(GaugeResult { steps, x_infinity: x_inf, pi_gauged })
    }

    /// `π_red` with `ħπ_red = p_Cart(Σ 1/k! P_k((ħ(π − J') − ħπ_KKS)^{∨k}))`, modulo `ħ^{N+1}`.
    pub fn reduce_linfty(
        &self,
        pi: &PolyMultivector,
        jp: &MomentumPerturbation,
        arity_cap: usize,
    ) -> Result<PolyMultivector> {
        let residual = self.formal_mc_residual(pi, jp);
        if !residual.is_zero() {
            return Err(Error::Contract(format!("not a formal Maurer–Cartan element, residual {residual:?}")));
        }
        let mut x = self.formal_element(pi, jp);
        let order = x.order();
        x -= &self.kks(order).mul_hbar(1);
        let p = self.supported_projection(order, arity_cap)?;
        let pushed = mc_pushforward(&p, &x)?;
        divide_hbar(&self.cartan_projection(&pushed))
    }

    /// `T_red(π)` for a classical curved MC element; only `P_1` meets the support of
    /// a Sym𝔤*-free element.
    pub fn reduce_classical(&self, pi: &PolyMultivector, arity_cap: usize) -> Result<PolyMultivector> {
        let residual = self.classical_mc_residual(pi);
        if !residual.is_zero() {
            return Err(Error::Contract(format!("not a curved Maurer–Cartan element, residual {residual:?}")));
        }
        let t = self.reduction_morphism(pi.order(), arity_cap)?;
        mc_pushforward_bounded(&t, pi, arity_cap)
    }

    /// The quotient structure by direct restriction: `{u_a, u_b}_π` on `α = 0`,
    /// fiber coordinates `0`, for the `M_red` coordinates `u_a`.
    pub fn marsden_weinstein(&self, pi: &PolyMultivector) -> PolyMultivector {
        let order = pi.order();
        let s = self.space(order);
        let lo = self.c_index(self.m_red());
        let mut out = s.zero();
        for a in 0..self.m_red() {
            for b in a + 1..self.m_red() {
                let (ua, ub) = (self.c_index(a), self.c_index(b));
                let f = poisson_bracket(pi, &s.coord(ua), &s.coord(ub));
                let f = f.filter(|k| self.alpha_degree(k) == 0 && k.exps[lo..].iter().all(|&e| e == 0));
                out += &wedge(&f, &wedge(&s.partial(ua), &s.partial(ub)));
            }
        }
        out
    }

    /// `π_KKS + Σ 1/k! i_{∞,k}(π_red^{∨k})` and its image under `T_red`.
    pub fn surjectivity_witness(
        &self,
        conn: &ConnectionData,
        pi_red: &PolyMultivector,
        arity_cap: usize,
    ) -> Result<(PolyMultivector, PolyMultivector)> {
        let order = pi_red.order();
        let inc = self.exponential_inclusion(conn, order, arity_cap);
        let mut preimage = mc_pushforward_bounded(&inc, pi_red, arity_cap)?;
        preimage += &self.kks(order);
        let image = self.reduce_classical(&preimage, arity_cap)?;
        Ok((preimage, image))
    }

    /// Cohomology of `[π_KKS − J, ·]` on invariant Taylor elements against that of `∂`
    /// on the invariant Cartan shape, in degrees `-1..=max_degree` and the piece where
    /// `deg_α + #∂_C = weight` (both differentials preserve this count and raise the degree
    /// by one). Fundamental fields with affine coefficients cannot raise
    /// `deg_C − #∂_C`, so bounding it by `max_c_degree` gives a finite subcomplex; a piece
    /// that fails to be closed is a contract error.
    pub fn cohomology_check(
        &self,
        max_degree: i32,
        weight: u32,
        max_c_degree: u32,
    ) -> Result<Vec<CohomologyComparison>> {
        let shape = ProbeShape {
            max_sym: ((max_degree + 2) / 2) as u32,
            max_alpha_degree: weight,
            max_c_degree: max_c_degree + weight,
            max_theta_alpha: self.n() as u32,
            max_c_arity: self.m() as u32,
            reduced_only: false,
            reduced_coefficients: false,
        };
        let c_dirs = !self.alpha_mask();
        let monos: Vec<Mono> = monomials(self, &shape)
            .into_iter()
            .filter(|k| self.alpha_degree(k) + (k.wedge & c_dirs).count_ones() == weight)
            .filter(|k| {
                let c_deg: u32 = k.exps[self.n()..].iter().map(|&e| e as u32).sum();
                c_deg <= max_c_degree + (k.wedge & c_dirs).count_ones()
            })
            .filter(|k| k.degree() <= max_degree + 1)
            .collect();
        let cartan: Vec<Mono> = monos.iter().filter(|k| self.is_cartan(k)).cloned().collect();
        let mut mu = self.kks(0);
        mu -= &self.momentum(0);
        let taylor_d = |x: &PolyMultivector| schouten(&mu, x);
        let cartan_d = |x: &PolyMultivector| self.del(x);
        let ht = self.piece_cohomology(&monos, max_degree, &taylor_d, "Taylor")?;
        let hc = self.piece_cohomology(&cartan, max_degree, &cartan_d, "Cartan")?;
        Ok((-1..=max_degree)
            .map(|k| CohomologyComparison {
                degree: k,
                weight,
                taylor: ht.get(&k).copied().unwrap_or(0),
                cartan: hc.get(&k).copied().unwrap_or(0),
            })
            .collect())
    }

    fn piece_cohomology(
        &self,
        monos: &[Mono],
        max_degree: i32,
        d: &dyn Fn(&PolyMultivector) -> PolyMultivector,
        label: &str,
    ) -> Result<BTreeMap<i32, usize>> {
        let mut spaces: BTreeMap<i32, Vec<PolyMultivector>> = BTreeMap::new();
        let mut by_degree: BTreeMap<i32, Vec<Mono>> = BTreeMap::new();
        for m in monos {
            by_degree.entry(m.degree()).or_default().push(m.clone());
        }
        for k in -2..=max_degree + 1 {
            let basis = by_degree.get(&k).map(|g| self.invariant_basis(g)).unwrap_or_default();
            spaces.insert(k, basis);
        }
        // rank of d on each degree, with the image checked to stay in the next space
        let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
        for k in -2..=max_degree {
            let images: Vec<PolyMultivector> = spaces[&k].iter().map(d).collect();
            let target = &spaces[&(k + 1)];
            let mut coords = Coordinates::new();
            for x in target.iter().chain(&images) {
                coords.extend(x);
            }
            let rows_t: Vec<Vec<Scalar>> = target.iter().map(|x| coords.vector(x, 0)).collect();
            let rows_i: Vec<Vec<Scalar>> = images.iter().map(|x| coords.vector(x, 0)).collect();
            let both: Vec<Vec<Scalar>> = rows_t.iter().chain(&rows_i).cloned().collect();
            if rank(&both, coords.len()) != rank(&rows_t, coords.len()) {
                return Err(Error::Contract(format!("{label} piece is not closed under d in degree {k}")));
            }
            ranks.insert(k, rank(&rows_i, coords.len()));
        }
        Ok((-1..=max_degree).map(|k| (k, spaces[&k].len() - ranks[&k] - ranks[&(k - 1)])).collect())
    }
}
