//! Principal connections on `C → M_red`, the Cartan retract onto `T_poly(M_red)` and
//! the exponential formula for the L∞-inclusion.

use std::sync::Arc;

use num_traits::Zero;

use super::model::ProductModel;
use crate::error::{Error, Result};
use crate::graded::scalar::{factorial, frac, int};
use crate::graded::{BasisKey, GradedElement, SymElement};
use crate::linfty::{coderivation_component_on, LinearMap, LinftyMorphism, LinftyStructure, WordMap};
use crate::poly::{wedge, Mono, OneForm, PolyMultivector, TwoForm};
use crate::retract::{DeformationRetract, SideFlag};

/// Connection one-forms `ω^i` on `C` and their curvature `Ω^i = dω^i − ½ f^i_{kl} ω^k ∧ ω^l`.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    omega: Vec<OneForm>,
    curvature: Vec<TwoForm>,
    /// Both embedded in the ambient layout.
    omega_amb: Vec<OneForm>,
    curvature_amb: Vec<TwoForm>,
}

fn embed_one_form(model: &ProductModel, w: &OneForm) -> OneForm {
    let dim = model.n() + model.m();
    let mut out = OneForm::zero(dim, w.order());
    for (c, f) in w.comps.iter().enumerate() {
        out.comps[model.c_index(c)] = model.embed_c(f);
    }
    out
}

fn embed_two_form(model: &ProductModel, w: &TwoForm) -> TwoForm {
    let dim = model.n() + model.m();
    let mut out = TwoForm::zero(dim, w.order);
    for (&(a, b), f) in &w.comps {
        out.comps.insert((model.c_index(a), model.c_index(b)), model.embed_c(f));
    }
    out
}

impl ConnectionData {
    /// Validates `ω^i((e_j)_C) = δ^i_j` and `𝓛_{(e_j)_C} ω^i = f^i_{jk} ω^k`.
    pub fn new(model: &ProductModel, omega: Vec<OneForm>) -> Result<Self> {
        let n = model.n();
        if omega.len() != n {
            return Err(Error::invalid("connection", format!("expected {n} one-forms, got {}", omega.len())));
        }
        for (i, w) in omega.iter().enumerate() {
            if w.dim() != model.m() {
                return Err(Error::invalid(
                    format!("connection[{i}]"),
                    format!("expected a one-form on R^{}", model.m()),
                ));
            }
        }
        let alg = model.algebra();
        for (i, w) in omega.iter().enumerate() {
            for j in 0..n {
                let v = w.insert(model.action().field(j));
                let expect =
                    if i == j { PolyMultivector::basis(Mono::one(0, model.m()), 0) } else { PolyMultivector::zero(0) };
                if v.with_order(0) != expect {
                    return Err(Error::Contract(format!(
                        "connection[{i}]: ω^{}((e_{})_C) = {v:?}, expected δ",
                        i + 1,
                        j + 1
                    )));
                }
                let mut r = w.lie_derivative(model.action().field(j));
                for (k, wk) in omega.iter().enumerate() {
                    r = r.add(&wk.scale(&-alg.f(j, k, i).clone()));
                }
                if !r.is_zero() {
                    return Err(Error::Contract(format!("connection[{i}] is not equivariant under e_{}", j + 1)));
                }
            }
        }
        let curvature: Vec<TwoForm> = (0..n)
            .map(|i| {
                let mut c = omega[i].exterior_derivative();
                for k in 0..n {
                    for l in 0..n {
                        let f = alg.f(k, l, i);
                        if !f.is_zero() {
                            c = c.add_scaled(&omega[k].wedge(&omega[l]), &(-f * frac(1, 2)));
                        }
                    }
                }
                c
            })
            .collect();
        let omega_amb = omega.iter().map(|w| embed_one_form(model, w)).collect();
        let curvature_amb = curvature.iter().map(|w| embed_two_form(model, w)).collect();
        Ok(ConnectionData { omega, curvature, omega_amb, curvature_amb })
    }

    /// The trivial connection `ω^i = d(fiber_i)` on a product `C = M_red × ℝ^n` whose
    /// action is `(e_i)_C = ∂/∂fiber_i`.
    pub fn coordinate(model: &ProductModel) -> Result<Self> {
        let omega =
            (0..model.n()).map(|i| OneForm::coordinate(model.m(), model.m_red() + i, model.c_space(0).one())).collect();
        Self::new(model, omega)
    }

    pub fn omega(&self) -> &[OneForm] {
        &self.omega
    }

    pub fn curvature(&self) -> &[TwoForm] {
        &self.curvature
    }

    pub fn is_flat(&self) -> bool {
        self.curvature.iter().all(TwoForm::is_zero)
    }
}

impl ProductModel {
    /// Horizontal lift of an element of `T_poly(M_red)` (ambient layout, order preserved).
    pub fn horizontal_lift(&self, conn: &ConnectionData, x: &PolyMultivector) -> PolyMultivector {
        let order = x.order();
        let s = self.space(order);
        let lifts: Vec<PolyMultivector> = (0..self.m_red())
            .map(|a| {
                let mut l = s.partial(self.c_index(a));
                for i in 0..self.n() {
                    let w = conn.omega_amb[i].comps[self.c_index(a)].with_order(order);
                    if !w.is_zero() {
                        l -= &wedge(&w, &self.field_c(i, order));
                    }
                }
                l
            })
            .collect();
        let mut out = PolyMultivector::zero(order);
        for (k, c) in x.iter() {
            let mut coeff = k.clone();
            coeff.wedge = 0;
            let mut t = PolyMultivector::term(coeff, c.clone());
            for d in k.wedge_indices() {
                t = wedge(&t, &lifts[d - self.n()]);
            }
            out += &t;
        }
        out
    }

    /// `p`: the `α`-degree-0 part, pushed forward to `M_red` (fiber directions dropped,
    /// fiber coordinates set to 0).
    pub fn cartan_projection(&self, x: &PolyMultivector) -> PolyMultivector {
        let lo = self.c_index(self.m_red());
        x.filter(|k| {
            self.is_cartan(k)
                && self.alpha_degree(k) == 0
                && k.wedge & self.fiber_mask() == 0
                && k.exps[lo..].iter().all(|&e| e == 0)
        })
    }

    /// `N_ver = Σ_i (e_i)_C ∧ ι(ω^i)`, the vertical degree operator.
    pub fn vertical_number(&self, conn: &ConnectionData, x: &PolyMultivector) -> PolyMultivector {
        let mut out = PolyMultivector::zero(x.order());
        for i in 0..self.n() {
            let y = conn.omega_amb[i].insert(x);
            if !y.is_zero() {
                out += &wedge(&self.field_c(i, x.order()), &y);
            }
        }
        out
    }

    /// Splits `x` into eigencomponents of `N_ver` by Lagrange interpolation.
    fn vertical_components(&self, conn: &ConnectionData, x: &PolyMultivector) -> Vec<(u32, PolyMultivector)> {
        let top = x.keys().map(Mono::arity).max().unwrap_or(0);
        let mut powers = vec![x.clone()];
        for _ in 0..top {
            let next = self.vertical_number(conn, powers.last().expect("nonempty"));
            powers.push(next);
        }
        let mut out = Vec::new();
        for v in 0..=top {
            // Π_{l ≠ v} (N − l)/(v − l) applied to x
            let mut poly = vec![int(1)];
            let mut denom = int(1);
            for l in 0..=top {
                if l == v {
                    continue;
                }
                let mut next = vec![int(0); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * int(l as i64);
                }
                poly = next;
                denom *= int(v as i64 - l as i64);
            }
            let mut y = PolyMultivector::zero(x.order());
            for (d, c) in poly.iter().enumerate() {
                if !c.is_zero() {
                    y.add_scaled(&powers[d], &(c / &denom));
                }
            }
            if !y.is_zero() {
                out.push((v, y));
            }
        }
        out
    }

    /// `h0 = Σ_i α_i ⊗ ι(ω^i)`, with `h0 ∂ + ∂ h0 = (deg_𝔤 + N_ver)·id`.
    pub fn cartan_homotopy_unnormalized(&self, conn: &ConnectionData, x: &PolyMultivector) -> PolyMultivector {
        let s = self.space(x.order());
        let mut out = PolyMultivector::zero(x.order());
        for i in 0..self.n() {
            let t = conn.omega_amb[i].insert(x);
            if !t.is_zero() {
                out += &wedge(&s.coord(self.alpha_index(i)), &t);
            }
        }
        out
    }

    /// `h(ξ ⊗ X) = 1/(deg ξ + deg_ver X) · α_i ξ ⊗ ι(ω^i)X`, zero in weight 0.
    pub fn cartan_homotopy(&self, conn: &ConnectionData, x: &PolyMultivector) -> PolyMultivector {
        let order = x.order();
        let mut out = PolyMultivector::zero(order);
        let max_a = x.keys().map(|k| self.alpha_degree(k)).max().unwrap_or(0);
        for a in 0..=max_a {
            let xa = x.filter(|k| self.alpha_degree(k) == a);
            if xa.is_zero() {
                continue;
            }
            for (v, y) in self.vertical_components(conn, &xa) {
                let w = a + v;
                if w == 0 {
                    continue;
                }
                out.add_scaled(&self.cartan_homotopy_unnormalized(conn, &y), &frac(1, w as i64));
            }
        }
        out
    }

    /// `T_poly(M_red) ⇄ (T_Cart, ∂)` with `i` the horizontal lift; `p` is a DGLA morphism
    /// on invariant elements.
    pub fn cartan_retract(
        &self,
        conn: &ConnectionData,
        order: usize,
        arity_cap: usize,
    ) -> DeformationRetract<Mono, Mono> {
        let a = LinftyStructure::from_dgla(crate::linfty::Dgla::polyvector(order), arity_cap);
        let b = LinftyStructure::from_dgla(self.cartan_dgla(order, 0), arity_cap);
        let (m1, c1) = (self.clone(), conn.clone());
        let i: LinearMap<Mono, Mono> =
            Arc::new(move |k: &Mono| m1.horizontal_lift(&c1, &PolyMultivector::basis(k.clone(), order)));
        let m2 = self.clone();
        let p: LinearMap<Mono, Mono> =
            Arc::new(move |k: &Mono| m2.cartan_projection(&PolyMultivector::basis(k.clone(), order)));
        let (m3, c3) = (self.clone(), conn.clone());
        let h: LinearMap<Mono, Mono> =
            Arc::new(move |k: &Mono| m3.cartan_homotopy(&c3, &PolyMultivector::basis(k.clone(), order)));
        DeformationRetract { a, b, i, p, h, flags: SideFlag { i_is_dgla_morphism: false, p_is_dgla_morphism: true } }
    }

    /// `Ω(P_1⊗X_1 ∨ P_2⊗X_2) = (−1)^{|X_1|} α_i P_1 P_2 ⊗ Ω^i(X_1, X_2)` on basis elements.
    pub fn curvature_pairing(&self, conn: &ConnectionData, x1: &Mono, x2: &Mono, order: usize) -> PolyMultivector {
        // the curvature is classical: evaluate at order 0 and lift the result
        let s = self.space(0);
        let e1 = PolyMultivector::basis(x1.clone(), 0);
        let e2 = PolyMultivector::basis(x2.clone(), 0);
        let mut out = PolyMultivector::zero(0);
        for i in 0..self.n() {
            let v = conn.curvature_amb[i].evaluate(&e1, &e2);
            if !v.is_zero() {
                out += &wedge(&s.coord(self.alpha_index(i)), &v);
            }
        }
        if x1.shifted_degree() & 1 == 1 {
            out = -out;
        }
        out.with_order(order)
    }

    /// `i_∞ = e^Ω ∘ (·)^hor`: `i_{∞,k} = 1/(k−1)! · (Ω^{k−1})^1_k ∘ hor^{∨k}`.
    pub fn exponential_inclusion(
        &self,
        conn: &ConnectionData,
        order: usize,
        arity_cap: usize,
    ) -> LinftyMorphism<Mono, Mono> {
        let (m, c) = (self.clone(), conn.clone());
        let omega2: WordMap<Mono, Mono> = Arc::new(move |w: &[Mono]| m.curvature_pairing(&c, &w[0], &w[1], order));
        let omega = LinftyStructure::from_maps(order, GradedElement::zero(order), vec![None, Some(omega2)], true);
        let mut comps: Vec<WordMap<Mono, Mono>> = Vec::new();
        for k in 1..=arity_cap {
            let (m, c, omega) = (self.clone(), conn.clone(), omega.clone());
            comps.push(Arc::new(move |w: &[Mono]| {
                let lifts: Vec<PolyMultivector> =
                    w.iter().map(|x| m.horizontal_lift(&c, &PolyMultivector::basis(x.clone(), order))).collect();
                let refs: Vec<&PolyMultivector> = lifts.iter().collect();
                let mut cur = SymElement::product_of(&refs, order);
                for arity in (2..=k).rev() {
                    cur = coderivation_component_on(&omega, arity, arity - 1, &cur).expect("Ω is binary");
                    if cur.is_zero() {
                        break;
                    }
                }
                cur.linear_part().scale(&factorial(k - 1).recip())
            }));
        }
        LinftyMorphism::new(order, comps)
    }
}
