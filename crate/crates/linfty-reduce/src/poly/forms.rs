//! Polynomial one- and two-forms acting on multivector fields.
//!
//! A two-form is stored by components `Ω_ab = Ω(∂_a, ∂_b)` for `a < b` and is
//! evaluated on multivectors as `Ω(X, Y) = Σ_ab Ω_ab ι(dx^a)X ∧ ι(dx^b)Y`.

use std::collections::BTreeMap;

use num_traits::One;

use super::calculus::{insert_coordinate, partial, schouten, wedge, PolyMultivector};
use crate::graded::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub comps: Vec<PolyMultivector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm {
    pub dim: usize,
    pub order: usize,
    pub comps: BTreeMap<(usize, usize), PolyMultivector>,
}

impl OneForm {
    pub fn zero(dim: usize, order: usize) -> Self {
        OneForm { comps: vec![PolyMultivector::zero(order); dim] }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn order(&self) -> usize {
        self.comps.first().map_or(0, |c| c.order())
    }

    /// `f dx^i`.
    pub fn coordinate(dim: usize, i: usize, f: PolyMultivector) -> Self {
        let mut w = Self::zero(dim, f.order());
        w.comps[i] = f;
        w
    }

    pub fn add(&self, other: &Self) -> Self {
        OneForm { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        OneForm { comps: self.comps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_function(&self, f: &PolyMultivector) -> Self {
        OneForm { comps: self.comps.iter().map(|a| wedge(f, a)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(PolyMultivector::is_zero)
    }

    /// `ι_α X`, inserting into the first slot.
    pub fn insert(&self, x: &PolyMultivector) -> PolyMultivector {
        let mut out = PolyMultivector::zero(x.order());
        for (i, a) in self.comps.iter().enumerate() {
            if !a.is_zero() {
                out += &wedge(a, &insert_coordinate(i, x));
            }
        }
        out
    }

    /// `(dω)_ab = ∂_a ω_b − ∂_b ω_a`.
    pub fn exterior_derivative(&self) -> TwoForm {
        let n = self.dim();
        let mut out = TwoForm::zero(n, self.order());
        for a in 0..n {
            for b in a + 1..n {
                let c = &partial(&self.comps[b], a) - &partial(&self.comps[a], b);
                out.set(a, b, c);
            }
        }
        out
    }

    /// `(ω ∧ η)_ab = ω_a η_b − ω_b η_a`.
    pub fn wedge(&self, other: &Self) -> TwoForm {
        let n = self.dim();
        let mut out = TwoForm::zero(n, self.order());
        for a in 0..n {
            for b in a + 1..n {
                let c = &wedge(&self.comps[a], &other.comps[b]) - &wedge(&self.comps[b], &other.comps[a]);
                out.set(a, b, c);
            }
        }
        out
    }

    /// `(𝓛_V ω)_b = V(ω_b) + Σ_a ω_a ∂_b V^a`.
    pub fn lie_derivative(&self, v: &PolyMultivector) -> Self {
        let n = self.dim();
        let comps = (0..n)
            .map(|b| {
                let mut c = schouten(v, &self.comps[b]);
                for a in 0..n {
                    let va = insert_coordinate(a, v);
                    c += &wedge(&self.comps[a], &partial(&va, b));
                }
                c
            })
            .collect();
        OneForm { comps }
    }
}

impl TwoForm {
    pub fn zero(dim: usize, order: usize) -> Self {
        TwoForm { dim, order, comps: BTreeMap::new() }
    }

    fn set(&mut self, a: usize, b: usize, c: PolyMultivector) {
        if c.is_zero() {
            self.comps.remove(&(a, b));
        } else {
            self.comps.insert((a, b), c);
        }
    }

    /// `Ω_ab` for any ordered pair.
    pub fn component(&self, a: usize, b: usize) -> PolyMultivector {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => {
                self.comps.get(&(a, b)).cloned().unwrap_or_else(|| PolyMultivector::zero(self.order))
            }
            std::cmp::Ordering::Greater => -self.component(b, a),
            std::cmp::Ordering::Equal => PolyMultivector::zero(self.order),
        }
    }

    pub fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for (&(a, b), v) in &other.comps {
            let mut cur = out.component(a, b);
            cur.add_scaled(v, c);
            out.set(a, b, cur);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn mul_function(&self, f: &PolyMultivector) -> Self {
        let mut out = TwoForm::zero(self.dim, self.order);
        for (&(a, b), v) in &self.comps {
            out.set(a, b, wedge(f, v));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// `Ω(X, Y) = Σ_{a<b} Ω_ab (ι_a X ∧ ι_b Y − ι_b X ∧ ι_a Y)`.
    pub fn evaluate(&self, x: &PolyMultivector, y: &PolyMultivector) -> PolyMultivector {
        let mut out = PolyMultivector::zero(x.order());
        for (&(a, b), c) in &self.comps {
            let t = &wedge(&insert_coordinate(a, x), &insert_coordinate(b, y))
                - &wedge(&insert_coordinate(b, x), &insert_coordinate(a, y));
            if !t.is_zero() {
                out += &wedge(c, &t);
            }
        }
        out
    }
}

/// Checks `dα(X,Y) = [ι_α X, Y] − (−1)^k [X, ι_α Y] − ι_α[X,Y]` with `k` the
/// number of `θ` factors of the homogeneous field `X`.
pub fn diff_geo_identity_check(alpha: &OneForm, x: &PolyMultivector, y: &PolyMultivector) -> bool {
    diff_geo_identity_residual(alpha, x, y).is_zero()
}

pub fn diff_geo_identity_residual(alpha: &OneForm, x: &PolyMultivector, y: &PolyMultivector) -> PolyMultivector {
    let mut residual = alpha.exterior_derivative().evaluate(x, y);
    // split X by arity so the sign is per component
    for (k, xk) in super::calculus::split_by_wedge_count(x, u64::MAX) {
        residual -= &schouten(&alpha.insert(&xk), y);
        let t = schouten(&xk, &alpha.insert(y));
        if k % 2 == 0 {
            residual += &t;
        } else {
            residual -= &t;
        }
        residual += &alpha.insert(&schouten(&xk, y));
    }
    residual
}
