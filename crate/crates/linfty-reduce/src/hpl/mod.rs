//! Homotopy equivalence data, the homological perturbation lemma and the deformed
//! Koszul complex used for BRST-style reduction.
//!
//! Grading is homological throughout: differentials and perturbations lower the chain
//! degree by one, homotopies raise it.

pub mod koszul;

pub use koszul::KoszulComplex;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::scalar::int;
use crate::graded::{BasisKey, GradedElement};
use crate::linfty::LinearMap;

fn apply<A: BasisKey, B: BasisKey>(f: &LinearMap<A, B>, x: &GradedElement<A>) -> GradedElement<B> {
    x.map_linear(|k| f(k))
}

/// `p: (D, d_D) → (C, d_C)`, `i: C → D`, `h: D → D` with `id_D − i p = d_D h + h d_D`.
#[derive(Clone)]
pub struct HomotopyEquivalenceData<C: BasisKey, D: BasisKey> {
    pub order: usize,
    pub d_c: LinearMap<C, C>,
    pub d_d: LinearMap<D, D>,
    pub p: LinearMap<D, C>,
    pub i: LinearMap<C, D>,
    pub h: LinearMap<D, D>,
}

/// A named identity and whether it held on every probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

fn record<B: BasisKey>(name: &'static str, residuals: impl IntoIterator<Item = GradedElement<B>>) -> IdentityCheck {
    let witness = residuals.into_iter().find(|r| !r.is_zero()).map(|r| format!("{r:?}"));
    IdentityCheck { name, passed: witness.is_none(), witness }
}

impl<C: BasisKey, D: BasisKey> HomotopyEquivalenceData<C, D> {
    pub fn d_c_of(&self, x: &GradedElement<C>) -> GradedElement<C> {
        apply(&self.d_c, x)
    }

    pub fn d_d_of(&self, x: &GradedElement<D>) -> GradedElement<D> {
        apply(&self.d_d, x)
    }

    pub fn p_of(&self, x: &GradedElement<D>) -> GradedElement<C> {
        apply(&self.p, x)
    }

    pub fn i_of(&self, x: &GradedElement<C>) -> GradedElement<D> {
        apply(&self.i, x)
    }

    pub fn h_of(&self, x: &GradedElement<D>) -> GradedElement<D> {
        apply(&self.h, x)
    }

    /// `d_C² = 0`, `d_D² = 0`, `p` and `i` chain maps and the homotopy relation on `D`.
    pub fn check(&self, c_probes: &[GradedElement<C>], d_probes: &[GradedElement<D>]) -> Vec<IdentityCheck> {
        vec![
            record("d_C^2 = 0", c_probes.iter().map(|x| self.d_c_of(&self.d_c_of(x)))),
            record("d_D^2 = 0", d_probes.iter().map(|x| self.d_d_of(&self.d_d_of(x)))),
            record("p d_D = d_C p", d_probes.iter().map(|x| &self.p_of(&self.d_d_of(x)) - &self.d_c_of(&self.p_of(x)))),
            record("d_D i = i d_C", c_probes.iter().map(|x| &self.d_d_of(&self.i_of(x)) - &self.i_of(&self.d_c_of(x)))),
            record(
                "id - ip = dh + hd",
                d_probes.iter().map(|x| {
                    let mut r = x - &self.i_of(&self.p_of(x));
                    r -= &self.d_d_of(&self.h_of(x));
                    r -= &self.h_of(&self.d_d_of(x));
                    r
                }),
            ),
        ]
    }

    /// `p i = id_C` on probes.
    pub fn check_section(&self, c_probes: &[GradedElement<C>]) -> IdentityCheck {
        record("p i = id", c_probes.iter().map(|x| &self.p_of(&self.i_of(x)) - x))
    }
}

/// `Σ_k (−B h)^k y`, which terminates when `B` raises the `ħ`-valuation.
fn geometric<D: BasisKey>(
    b: &LinearMap<D, D>,
    h: &LinearMap<D, D>,
    y: GradedElement<D>,
    order: usize,
) -> Result<GradedElement<D>> {
    let mut out = y.clone();
    let mut term = y;
    for _ in 0..=order + 1 {
        term = apply(b, &apply(h, &term)).scale(&int(-1));
        if term.is_zero() {
            return Ok(out);
        }
        out += &term;
    }
    Err(Error::Contract("the perturbation is not small: (id + Bh)^{-1} does not terminate".into()))
}

/// The perturbed data `d_D + B`, `d_C + pAi`, `P = p − pAh`, `I = i − hAi`, `H = h − hAh`
/// with `A = (id + Bh)^{-1} B`.
///
/// Smallness is checked on `witnesses`: the geometric series must terminate on each
/// `B(x)`. The returned maps assume it terminates everywhere, which holds whenever `B`
/// raises the `ħ`-valuation.
pub fn perturb<C: BasisKey, D: BasisKey>(
    he: &HomotopyEquivalenceData<C, D>,
    b: LinearMap<D, D>,
    witnesses: &[GradedElement<D>],
) -> Result<HomotopyEquivalenceData<C, D>> {
    let order = he.order;
    for x in witnesses {
        geometric(&b, &he.h, apply(&b, x), order)?;
    }
    let a: LinearMap<D, D> = {
        let (b, h) = (b.clone(), he.h.clone());
        Arc::new(move |k: &D| geometric(&b, &h, b(k), order).expect("small perturbation"))
    };
    let HomotopyEquivalenceData { d_c, d_d, p, i, h, .. } = he.clone();
    let d_d2: LinearMap<D, D> = {
        let (d, b) = (d_d.clone(), b.clone());
        Arc::new(move |k: &D| &d(k) + &b(k))
    };
    let d_c2: LinearMap<C, C> = {
        let (d, p, a, i) = (d_c.clone(), p.clone(), a.clone(), i.clone());
        Arc::new(move |k: &C| &d(k) + &apply(&p, &apply(&a, &i(k))))
    };
    let p2: LinearMap<D, C> = {
        let (p, a, h) = (p.clone(), a.clone(), h.clone());
        Arc::new(move |k: &D| &p(k) - &apply(&p, &apply(&a, &h(k))))
    };
    let i2: LinearMap<C, D> = {
        let (i, a, h) = (i.clone(), a.clone(), h.clone());
        Arc::new(move |k: &C| &i(k) - &apply(&h, &apply(&a, &i(k))))
    };
    let h2: LinearMap<D, D> = {
        let (a, h) = (a.clone(), h.clone());
        Arc::new(move |k: &D| &h(k) - &apply(&h, &apply(&a, &h(k))))
    };
    Ok(HomotopyEquivalenceData { order, d_c: d_c2, d_d: d_d2, p: p2, i: i2, h: h2 })
}

/// The closed forms for `C` concentrated in degree 0 and `D` in degrees `≥ 0`:
/// `P = p (id + Bh)^{-1}`, `I = i`, `H = h (id + Bh)^{-1}`, `d_C` unchanged.
pub fn perturb_special<C: BasisKey, D: BasisKey>(
    he: &HomotopyEquivalenceData<C, D>,
    b: LinearMap<D, D>,
) -> HomotopyEquivalenceData<C, D> {
    let order = he.order;
    let HomotopyEquivalenceData { d_c, d_d, p, i, h, .. } = he.clone();
    let inv = {
        let (b, h) = (b.clone(), h.clone());
        move |x: GradedElement<D>| geometric(&b, &h, x, order).expect("small perturbation")
    };
    let d_d2: LinearMap<D, D> = {
        let (d, b) = (d_d.clone(), b.clone());
        Arc::new(move |k: &D| &d(k) + &b(k))
    };
    let p2: LinearMap<D, C> = {
        let (p, inv) = (p.clone(), inv.clone());
        Arc::new(move |k: &D| apply(&p, &inv(GradedElement::basis(k.clone(), order))))
    };
    let h2: LinearMap<D, D> = {
        let h = h.clone();
        Arc::new(move |k: &D| apply(&h, &inv(GradedElement::basis(k.clone(), order))))
    };
    HomotopyEquivalenceData { order, d_c, d_d: d_d2, p: p2, i, h: h2 }
}
