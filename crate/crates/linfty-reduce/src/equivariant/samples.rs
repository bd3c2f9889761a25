//! The reference Poisson structures, connections and momentum corrections behind
//! the shipped fixtures.

use super::cartan::ConnectionData;
use super::model::ProductModel;
use super::reduction::{divide_hbar, exp_action, MomentumPerturbation};
use crate::error::Result;
use crate::linfty::{mc_pushforward, mc_pushforward_bounded};
use crate::poly::{wedge, OneForm, PolyMultivector, PolySpace};

/// `ω¹ = da + u dv`, `ω² = db − b ω¹` on `C = (u, v, a, b)` for [`ProductModel::affine`].
pub fn affine_connection(model: &ProductModel) -> Result<ConnectionData> {
    let s = PolySpace::new(0, 4, 0);
    let w1 = OneForm::coordinate(4, 2, s.one()).add(&OneForm::coordinate(4, 1, s.coord(0)));
    let w2 = OneForm::coordinate(4, 3, s.one()).add(&w1.mul_function(&-&s.coord(3)));
    ConnectionData::new(model, vec![w1, w2])
}

/// A Poisson structure on `M_red` in the ambient layout: `∂_u∧∂_v` scaled by `1`, `u`
/// or `v` depending on `scale`.
pub fn reduced_structure(model: &ProductModel, scale: Option<usize>, order: usize) -> PolyMultivector {
    let s = model.space(order);
    let (u, v) = (model.c_index(0), model.c_index(1));
    let pi = wedge(&s.partial(u), &s.partial(v));
    match scale {
        Some(c) => wedge(&s.coord(model.c_index(c)), &pi),
        None => pi,
    }
}

/// `π_KKS + π_C` with `π_C = Σ 1/k! i_{∞,k}(π_red^{∨k})`; without a connection the
/// action on `M_red` is trivial and `π_C = π_red`. For a classical `π_red` the series is
/// cut after `arity_cap` terms, which is exact only for flat connections.
pub fn lifted_structure(
    model: &ProductModel,
    conn: Option<&ConnectionData>,
    pi_red: &PolyMultivector,
    arity_cap: usize,
) -> Result<PolyMultivector> {
    let order = pi_red.order();
    let mut pi = match conn {
        Some(c) => {
            let inc = model.exponential_inclusion(c, order, arity_cap);
            if pi_red.min_valuation().is_some_and(|v| v > 0) {
                mc_pushforward(&inc, pi_red)?
            } else {
                mc_pushforward_bounded(&inc, pi_red, arity_cap)?
            }
        }
        None => pi_red.clone(),
    };
    pi += &model.kks(order);
    Ok(pi)
}

/// The invariant gauge field `Y`: `u∂_{α_1}`, or `u·Σ α_k∂_{α_k}` for a non-abelian
/// algebra without a `∂_{α_1}`-invariant direction.
pub fn gauge_field(model: &ProductModel, euler: bool, order: usize) -> PolyMultivector {
    let s = model.space(order);
    let u = s.coord(model.c_index(0));
    if euler {
        let mut e = s.zero();
        for k in 0..model.n() {
            let a = model.alpha_index(k);
            e += &wedge(&s.coord(a), &s.partial(a));
        }
        wedge(&u, &e)
    } else {
        wedge(&u, &s.partial(model.alpha_index(0)))
    }
}

/// `(exp(ad ħY)π, J')` with `J + ħJ' = exp(ad ħY) J`, both modulo `ħ^{order+1}`.
pub fn gauge_perturbation(
    model: &ProductModel,
    pi: &PolyMultivector,
    y: &PolyMultivector,
) -> Result<(PolyMultivector, MomentumPerturbation)> {
    let order = pi.order();
    let hy = y.with_order(order + 1).mul_hbar(1);
    let s = model.space(order + 1);
    let mut comps = Vec::new();
    for i in 0..model.n() {
        let a = s.coord(model.alpha_index(i));
        let shifted = &exp_action(&hy, &a) - &a;
        comps.push(divide_hbar(&shifted)?.with_order(order));
    }
    let pi2 = exp_action(&hy, &pi.with_order(order + 1)).with_order(order);
    Ok((pi2, MomentumPerturbation::new(model, comps)?))
}
