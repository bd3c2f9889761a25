//! The product model `M = C × 𝔤*` with `C = M_red × ℝ^{fiber}`.
//!
//! All elements live in one ambient layout: Sym𝔤* generators `s_1..s_n`,
//! coordinates `α_1..α_n` on 𝔤* followed by the coordinates of `C`
//! (first `M_red`, then the fiber).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{BasisKey, Scalar};
use crate::linalg::{kernel, Coordinates};
use crate::poly::{
    partial_sym, schouten, wedge, InfinitesimalAction, LieAlgebraData, Mono, PolyMultivector, PolySpace,
};

#[derive(Clone, Debug)]
pub struct ProductModel {
    action: InfinitesimalAction,
    m_red: usize,
    m: usize,
}

impl ProductModel {
    /// `fields` are `(e_i)_C` on `C = ℝ^m` (layout without Sym generators).
    pub fn new(algebra: LieAlgebraData, m_red: usize, m: usize, fields: Vec<PolyMultivector>) -> Result<Self> {
        if m_red > m {
            return Err(Error::invalid("base_dim", format!("M_red dimension {m_red} exceeds dim C = {m}")));
        }
        if algebra.dim() + m > crate::poly::mono::MAX_DIM {
            return Err(Error::Capacity(format!("ambient dimension {} too large", algebra.dim() + m)));
        }
        for (i, x) in fields.iter().enumerate() {
            if x.keys().any(|k| k.dim() != m || k.nsym() != 0) {
                return Err(Error::invalid(format!("action[{i}]"), format!("expected a vector field on R^{m}")));
            }
        }
        let action = InfinitesimalAction::new(algebra, fields)?;
        Ok(ProductModel { action, m_red, m })
    }

    /// `𝔤 = ℝ²` acting on `C = ℝ⁴ = (u, v, x, y)` by `∂_x, ∂_y`; `M_red = (u, v)`.
    pub fn translation() -> Self {
        let s = PolySpace::new(0, 4, 0);
        Self::new(LieAlgebraData::abelian(2), 2, 4, vec![s.partial(2), s.partial(3)]).expect("valid model")
    }

    /// `aff(1)` acting on `C = ℝ⁴ = (u, v, a, b)` by `∂_a + b∂_b, ∂_b`; `M_red = (u, v)`.
    pub fn affine() -> Self {
        let s = PolySpace::new(0, 4, 0);
        let e1 = &s.partial(2) + &wedge(&s.coord(3), &s.partial(3));
        Self::new(LieAlgebraData::affine(), 2, 4, vec![e1, s.partial(3)]).expect("valid model")
    }

    /// `so(3)` acting trivially on `C = ℝ² = (u, v) = M_red`.
    pub fn so3_trivial() -> Self {
        let s = PolySpace::new(0, 2, 0);
        Self::new(LieAlgebraData::so3(), 2, 2, vec![s.zero(), s.zero(), s.zero()]).expect("valid model")
    }

    pub fn algebra(&self) -> &LieAlgebraData {
        self.action.algebra()
    }

    pub fn action(&self) -> &InfinitesimalAction {
        &self.action
    }

    /// `dim 𝔤`.
    pub fn n(&self) -> usize {
        self.action.algebra().dim()
    }

    /// `dim C`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn m_red(&self) -> usize {
        self.m_red
    }

    pub fn fiber_dim(&self) -> usize {
        self.m - self.m_red
    }

    pub fn space(&self, order: usize) -> PolySpace {
        PolySpace::new(self.n(), self.n() + self.m, order)
    }

    /// The `C`-only layout (no Sym generators, no `α`).
    pub fn c_space(&self, order: usize) -> PolySpace {
        PolySpace::new(0, self.m, order)
    }

    /// `T_poly(M_red)` layout.
    pub fn red_space(&self, order: usize) -> PolySpace {
        PolySpace::new(0, self.m_red, order)
    }

    /// Index of `α_i` in the ambient layout.
    pub fn alpha_index(&self, i: usize) -> usize {
        i
    }

    /// Index of the `c`-th coordinate of `C` in the ambient layout.
    pub fn c_index(&self, c: usize) -> usize {
        self.n() + c
    }

    /// Bit mask of the `θ_α` directions.
    pub fn alpha_mask(&self) -> u64 {
        (1u64 << self.n()) - 1
    }

    /// Bit mask of the fiber directions of `C`.
    pub fn fiber_mask(&self) -> u64 {
        let lo = self.n() + self.m_red;
        ((1u64 << self.fiber_dim()) - 1) << lo
    }

    /// Embeds a multivector on `C` into the ambient layout.
    pub fn embed_c(&self, x: &PolyMultivector) -> PolyMultivector {
        let order = x.order();
        self.space(order).embed(x, self.n())
    }

    /// `(e_i)_C` in the ambient layout.
    pub fn field_c(&self, i: usize, order: usize) -> PolyMultivector {
        self.embed_c(&self.action.field(i).with_order(order))
    }

    /// `(e_i)_M = (e_i)_C + α_k f^k_{ji} ∂/∂α_j`.
    pub fn field_m(&self, i: usize, order: usize) -> PolyMultivector {
        let s = self.space(order);
        let mut x = self.field_c(i, order);
        for j in 0..self.n() {
            for k in 0..self.n() {
                let f = self.algebra().f(j, i, k);
                if !num_traits::Zero::is_zero(f) {
                    x.add_scaled(&wedge(&s.coord(k), &s.partial(j)), f);
                }
            }
        }
        x
    }

    /// Checks `[(e_i)_M, (e_j)_M] = −f^k_{ij}(e_k)_M`.
    pub fn validate_lifted_action(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let mut r = schouten(&self.field_m(i, 0), &self.field_m(j, 0));
                for k in 0..n {
                    r.add_scaled(&self.field_m(k, 0), self.algebra().f(i, j, k));
                }
                if !r.is_zero() {
                    return Err(Error::Contract(format!("lifted action fails on ({}, {}): {r:?}", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    /// Degree in Sym𝔤* plus the number of `θ_α`.
    pub fn koszul_degree(&self, k: &Mono) -> u32 {
        k.sym_degree() + (k.wedge & self.alpha_mask()).count_ones()
    }

    /// Polynomial degree in the `α` coordinates (the Sym𝔤 degree).
    pub fn alpha_degree(&self, k: &Mono) -> u32 {
        k.exps[..self.n()].iter().map(|&e| e as u32).sum()
    }

    /// Number of fiber `∂`'s.
    pub fn vertical_degree(&self, k: &Mono) -> u32 {
        (k.wedge & self.fiber_mask()).count_ones()
    }

    /// Cartan-model shape: no Sym𝔤* part and no `θ_α`.
    pub fn is_cartan(&self, k: &Mono) -> bool {
        k.sym_degree() == 0 && k.wedge & self.alpha_mask() == 0
    }

    /// The action of every `e_a` on `x`: `𝓛_{(e_a)_M}` plus the coadjoint action on
    /// Sym𝔤*, `s_k ↦ −f^k_{ia} s_i`, fixed by the invariance of `J`.
    pub fn action_on(&self, x: &PolyMultivector) -> Vec<PolyMultivector> {
        let s = self.space(x.order());
        (0..self.n())
            .map(|a| {
                let mut out = schouten(&self.field_m(a, x.order()), x);
                for k in 0..self.n() {
                    let d = partial_sym(x, k);
                    if d.is_zero() {
                        continue;
                    }
                    for i in 0..self.n() {
                        let f = self.algebra().f(i, a, k);
                        if !f.is_zero() {
                            out.add_scaled(&wedge(&s.sym(i), &d), &-f);
                        }
                    }
                }
                out
            })
            .collect()
    }

    pub fn is_invariant(&self, x: &PolyMultivector) -> bool {
        self.action_on(x).iter().all(PolyMultivector::is_zero)
    }

    /// A basis of the invariant elements in the span of `monos`, one degree at a time.
    pub fn invariant_basis(&self, monos: &[Mono]) -> Vec<PolyMultivector> {
        let mut by_degree: BTreeMap<i32, Vec<Mono>> = BTreeMap::new();
        for m in monos {
            by_degree.entry(m.degree()).or_default().push(m.clone());
        }
        let mut out = Vec::new();
        for group in by_degree.values() {
            let images: Vec<Vec<PolyMultivector>> =
                group.iter().map(|m| self.action_on(&PolyMultivector::basis(m.clone(), 0))).collect();
            let mut coords = Coordinates::new();
            for v in images.iter().flatten() {
                coords.extend(v);
            }
            // columns are the monomials, rows the (generator, image monomial) pairs
            let mut rows = vec![vec![Scalar::zero(); group.len()]; self.n() * coords.len()];
            for (j, imgs) in images.iter().enumerate() {
                for (i, v) in imgs.iter().enumerate() {
                    for (r, c) in coords.vector(v, 0).into_iter().enumerate() {
                        rows[i * coords.len() + r][j] = c;
                    }
                }
            }
            for v in kernel(&rows, group.len()) {
                let mut x = PolyMultivector::zero(0);
                for (m, c) in group.iter().zip(v) {
                    if !c.is_zero() {
                        x.add_scaled(&PolyMultivector::basis(m.clone(), 0), &c);
                    }
                }
                out.push(x);
            }
        }
        out
    }

    /// Default coordinate names: `a1..an`, then `x1..xm`.
    pub fn names(&self) -> Vec<String> {
        (1..=self.n()).map(|i| format!("a{i}")).chain((1..=self.m).map(|i| format!("x{i}"))).collect()
    }
}
