//! Deterministic random probe elements in the ambient layout of a model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::ProductModel;
use crate::graded::scalar::int;
use crate::graded::GradedElement;
use crate::poly::{Mono, PolyMultivector};

/// Bounds on the monomials a probe may contain.
#[derive(Clone, Copy, Debug)]
pub struct ProbeShape {
    pub max_sym: u32,
    pub max_alpha_degree: u32,
    pub max_c_degree: u32,
    pub max_theta_alpha: u32,
    pub max_c_arity: u32,
    /// Use only `M_red` coordinates and directions on `C`.
    pub reduced_only: bool,
    /// Coefficients depend only on `M_red` coordinates (directions unrestricted).
    pub reduced_coefficients: bool,
}

impl ProbeShape {
    /// Cartan shape: no Sym𝔤*, no `θ_α`.
    pub fn cartan(max_alpha_degree: u32) -> Self {
        ProbeShape {
            max_sym: 0,
            max_alpha_degree,
            max_c_degree: 1,
            max_theta_alpha: 0,
            max_c_arity: 2,
            reduced_only: false,
            reduced_coefficients: false,
        }
    }

    pub fn taylor() -> Self {
        ProbeShape {
            max_sym: 1,
            max_alpha_degree: 1,
            max_c_degree: 1,
            max_theta_alpha: 1,
            max_c_arity: 2,
            reduced_only: false,
            reduced_coefficients: false,
        }
    }

    pub fn reduced() -> Self {
        ProbeShape {
            max_sym: 0,
            max_alpha_degree: 0,
            max_c_degree: 1,
            max_theta_alpha: 0,
            max_c_arity: 2,
            reduced_only: true,
            reduced_coefficients: true,
        }
    }
}

pub struct ProbeSampler {
    rng: ChaCha8Rng,
}

impl ProbeSampler {
    pub fn new(seed: u64) -> Self {
        ProbeSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn mono(&mut self, model: &ProductModel, shape: &ProbeShape) -> Mono {
        let n = model.n();
        let c_dims = if shape.reduced_only { model.m_red() } else { model.m() };
        let mut sym = vec![0u16; n];
        for _ in 0..self.rng.gen_range(0..=shape.max_sym) {
            sym[self.rng.gen_range(0..n)] += 1;
        }
        let mut exps = vec![0u16; n + model.m()];
        for _ in 0..self.rng.gen_range(0..=shape.max_alpha_degree) {
            exps[self.rng.gen_range(0..n)] += 1;
        }
        let coeff_dims = if shape.reduced_coefficients { model.m_red() } else { c_dims };
        if coeff_dims > 0 {
            for _ in 0..self.rng.gen_range(0..=shape.max_c_degree) {
                exps[n + self.rng.gen_range(0..coeff_dims)] += 1;
            }
        }
        let mut wedge = 0u64;
        for _ in 0..self.rng.gen_range(0..=shape.max_theta_alpha) {
            wedge |= 1 << self.rng.gen_range(0..n);
        }
        if c_dims > 0 {
            for _ in 0..self.rng.gen_range(0..=shape.max_c_arity) {
                wedge |= 1 << (n + self.rng.gen_range(0..c_dims));
            }
        }
        Mono::new(sym, exps, wedge)
    }

    /// A sum of `1..=terms` monomials with coefficients in `{±1, ±2}`.
    pub fn element(&mut self, model: &ProductModel, shape: &ProbeShape, terms: usize, order: usize) -> PolyMultivector {
        loop {
            let mut x = GradedElement::zero(order);
            for _ in 0..self.rng.gen_range(1..=terms) {
                let c = [-2, -1, 1, 2][self.rng.gen_range(0..4)];
                x.add_scaled(&PolyMultivector::basis(self.mono(model, shape), order), &int(c));
            }
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A monomial probe of fixed degree (all terms share the degree of the first).
    pub fn homogeneous(
        &mut self,
        model: &ProductModel,
        shape: &ProbeShape,
        terms: usize,
        order: usize,
    ) -> PolyMultivector {
        let first = self.element(model, shape, 1, order);
        let deg = first.homogeneous_degree();
        let mut x = first;
        for _ in 1..terms {
            let y = self.element(model, shape, 1, order);
            if y.homogeneous_degree() == deg {
                x += &y;
            }
        }
        x
    }

    pub fn elements(
        &mut self,
        model: &ProductModel,
        shape: &ProbeShape,
        count: usize,
        order: usize,
    ) -> Vec<PolyMultivector> {
        (0..count).map(|_| self.homogeneous(model, shape, 2, order)).collect()
    }

    /// Tuples of `len` homogeneous probes.
    pub fn tuples(
        &mut self,
        model: &ProductModel,
        shape: &ProbeShape,
        len: usize,
        count: usize,
        order: usize,
    ) -> Vec<Vec<PolyMultivector>> {
        (0..count).map(|_| self.elements(model, shape, len, order)).collect()
    }
}

pub(crate) fn exponent_vectors(len: usize, max_total: u32) -> Vec<Vec<u16>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max_total {
        for mut rest in exponent_vectors(len - 1, max_total - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

fn subsets(dirs: &[usize], max_size: u32) -> Vec<u64> {
    (0u64..1 << dirs.len())
        .filter(|s| s.count_ones() <= max_size)
        .map(|s| dirs.iter().enumerate().filter(|(b, _)| s >> b & 1 == 1).fold(0, |w, (_, &d)| w | 1 << d))
        .collect()
}

/// Every monomial within the bounds of `shape`, in a fixed order.
pub fn monomials(model: &ProductModel, shape: &ProbeShape) -> Vec<Mono> {
    let n = model.n();
    let c_dims = if shape.reduced_only { model.m_red() } else { model.m() };
    let coeff_dims = if shape.reduced_coefficients { model.m_red() } else { c_dims };
    let alpha_dirs: Vec<usize> = (0..n).collect();
    let c_dirs: Vec<usize> = (n..n + c_dims).collect();
    let mut out = Vec::new();
    for sym in exponent_vectors(n, shape.max_sym) {
        for alpha in exponent_vectors(n, shape.max_alpha_degree) {
            for c in exponent_vectors(coeff_dims, shape.max_c_degree) {
                let mut exps = alpha.clone();
                exps.extend(&c);
                exps.resize(n + model.m(), 0);
                for ta in subsets(&alpha_dirs, shape.max_theta_alpha) {
                    for tc in subsets(&c_dirs, shape.max_c_arity) {
                        out.push(Mono::new(sym.clone(), exps.clone(), ta | tc));
                    }
                }
            }
        }
    }
    out
}

impl ProbeSampler {
    /// Random combinations of one or two basis elements of equal degree.
    pub fn combinations(&mut self, basis: &[PolyMultivector], count: usize) -> Vec<PolyMultivector> {
        assert!(!basis.is_empty(), "empty probe basis");
        (0..count)
            .map(|_| {
                let x = &basis[self.rng.gen_range(0..basis.len())];
                let c = [-2, -1, 1, 2][self.rng.gen_range(0..4)];
                let mut out = x.scale(&int(c));
                let y = &basis[self.rng.gen_range(0..basis.len())];
                if y.homogeneous_degree() == x.homogeneous_degree() && self.rng.gen_bool(0.5) {
                    out += y;
                }
                if out.is_zero() {
                    x.clone()
                } else {
                    out
                }
            })
            .collect()
    }
}
