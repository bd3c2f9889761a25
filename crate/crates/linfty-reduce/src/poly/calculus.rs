//! Wedge product, Schouten–Nijenhuis bracket, derivatives and insertions.
//!
//! In super-coordinates `(x_i, θ_i)` the bracket reads
//! `[P, Q] = Σ_i (P ∂⃖/∂θ_i)(∂Q/∂x_i) − (∂P/∂x_i)(∂⃗/∂θ_i Q)`.
//! With this convention `[X, f] = X(f)` and `[V, W]` is the commutator of vector fields.

use num_traits::One;

use super::mono::{mono_mul, Mono};
use crate::error::{Error, Result};
use crate::graded::scalar::int;
use crate::graded::{GradedElement, Scalar};

pub type PolyMultivector = GradedElement<Mono>;

/// `(nsym, dim)` of the first term, if any.
pub fn shape(x: &PolyMultivector) -> Option<(usize, usize)> {
    x.keys().next().map(|m| (m.nsym(), m.dim()))
}

fn check_shapes(x: &PolyMultivector, y: &PolyMultivector) -> Result<()> {
    match (shape(x), shape(y)) {
        (Some(a), Some(b)) if a != b => Err(Error::Argument(format!("ambient shapes differ: {a:?} vs {b:?}"))),
        _ if x.order() != y.order() => {
            Err(Error::Argument(format!("truncation orders differ: {} vs {}", x.order(), y.order())))
        }
        _ => Ok(()),
    }
}

fn bilinear(
    x: &PolyMultivector,
    y: &PolyMultivector,
    kernel: impl Fn(&Mono, &Mono, &mut Vec<(Mono, i64)>),
) -> PolyMultivector {
    let mut out = PolyMultivector::zero(x.order());
    let mut buf = Vec::new();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            buf.clear();
            kernel(a, b, &mut buf);
            if buf.is_empty() {
                continue;
            }
            let c = ca * cb;
            for (m, k) in buf.drain(..) {
                out.add_scaled_term(m, &c, &int(k));
            }
        }
    }
    out
}

fn wedge_kernel(a: &Mono, b: &Mono, out: &mut Vec<(Mono, i64)>) {
    if let Some((m, s)) = mono_mul(a, b) {
        out.push((m, s as i64));
    }
}

fn schouten_kernel(a: &Mono, b: &Mono, out: &mut Vec<(Mono, i64)>) {
    let dim = a.dim();
    for i in 0..dim {
        let bit = 1u64 << i;
        if a.wedge & bit != 0 && b.exps[i] > 0 {
            // right derivative of a in θ_i, times ∂b/∂x_i
            let sign_r = if (a.wedge >> (i + 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
            let mut a2 = a.clone();
            a2.wedge &= !bit;
            let mut b2 = b.clone();
            b2.exps[i] -= 1;
            if let Some((m, s)) = mono_mul(&a2, &b2) {
                out.push((m, (sign_r * s) as i64 * b.exps[i] as i64));
            }
        }
        if b.wedge & bit != 0 && a.exps[i] > 0 {
            // ∂a/∂x_i times left derivative of b in θ_i
            let sign_l = if (b.wedge & (bit - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
            let mut a2 = a.clone();
            a2.exps[i] -= 1;
            let mut b2 = b.clone();
            b2.wedge &= !bit;
            if let Some((m, s)) = mono_mul(&a2, &b2) {
                out.push((m, -((sign_l * s) as i64) * a.exps[i] as i64));
            }
        }
    }
}

pub fn wedge(x: &PolyMultivector, y: &PolyMultivector) -> PolyMultivector {
    bilinear(x, y, wedge_kernel)
}

pub fn try_wedge(x: &PolyMultivector, y: &PolyMultivector) -> Result<PolyMultivector> {
    check_shapes(x, y)?;
    Ok(wedge(x, y))
}

pub fn schouten(x: &PolyMultivector, y: &PolyMultivector) -> PolyMultivector {
    bilinear(x, y, schouten_kernel)
}

pub fn try_schouten(x: &PolyMultivector, y: &PolyMultivector) -> Result<PolyMultivector> {
    check_shapes(x, y)?;
    Ok(schouten(x, y))
}

/// `𝓛_V X = [V, X]`.
pub fn lie_derivative(v: &PolyMultivector, x: &PolyMultivector) -> PolyMultivector {
    schouten(v, x)
}

pub fn try_lie_derivative(v: &PolyMultivector, x: &PolyMultivector) -> Result<PolyMultivector> {
    if v.keys().any(|m| m.arity() != 1) {
        return Err(Error::Argument("Lie derivative along a non-vector field".into()));
    }
    try_schouten(v, x)
}

/// Coefficient-wise `∂/∂x_i`.
pub fn partial(x: &PolyMultivector, i: usize) -> PolyMultivector {
    let mut out = PolyMultivector::zero(x.order());
    for (m, c) in x.iter() {
        if m.exps[i] > 0 {
            let mut m2 = m.clone();
            m2.exps[i] -= 1;
            out.add_scaled_term(m2, c, &int(m.exps[i] as i64));
        }
    }
    out
}

/// `∂/∂s_l` on the even Sym𝔤* generators.
pub fn partial_sym(x: &PolyMultivector, l: usize) -> PolyMultivector {
    let mut out = PolyMultivector::zero(x.order());
    for (m, c) in x.iter() {
        if m.sym[l] > 0 {
            let mut m2 = m.clone();
            m2.sym[l] -= 1;
            out.add_scaled_term(m2, c, &int(m.sym[l] as i64));
        }
    }
    out
}

/// `ι(dx^i)`: left derivative in `θ_i`.
pub fn insert_coordinate(i: usize, x: &PolyMultivector) -> PolyMultivector {
    let bit = 1u64 << i;
    let mut out = PolyMultivector::zero(x.order());
    for (m, c) in x.iter() {
        if m.wedge & bit != 0 {
            let sign = if (m.wedge & (bit - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
            let mut m2 = m.clone();
            m2.wedge &= !bit;
            out.add_scaled_term(m2, c, &int(sign));
        }
    }
    out
}

/// Applies a vector field to a function-valued element, `X(f) = [X, f]`.
pub fn apply_vector_field(v: &PolyMultivector, f: &PolyMultivector) -> PolyMultivector {
    schouten(v, f)
}

/// Multiplies every coefficient by a function (degree-zero wedge).
pub fn mul_function(f: &PolyMultivector, x: &PolyMultivector) -> PolyMultivector {
    wedge(f, x)
}

/// Number of `θ` factors if homogeneous.
pub fn arity(x: &PolyMultivector) -> Option<u32> {
    let mut it = x.keys().map(Mono::arity);
    let a = it.next()?;
    it.all(|b| b == a).then_some(a)
}

/// Splits by the number of `θ` factors among the given coordinates.
pub fn split_by_wedge_count(x: &PolyMultivector, mask: u64) -> Vec<(u32, PolyMultivector)> {
    let mut parts: std::collections::BTreeMap<u32, PolyMultivector> = Default::default();
    for (m, c) in x.iter() {
        let k = (m.wedge & mask).count_ones();
        parts.entry(k).or_insert_with(|| PolyMultivector::zero(x.order())).add_term(m.clone(), c);
    }
    parts.into_iter().collect()
}

/// Builds elements in a fixed ambient `(nsym, dim)` at truncation `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpace {
    pub nsym: usize,
    pub dim: usize,
    pub order: usize,
}

impl PolySpace {
    pub fn new(nsym: usize, dim: usize, order: usize) -> Self {
        assert!(dim <= super::mono::MAX_DIM);
        PolySpace { nsym, dim, order }
    }

    pub fn zero(&self) -> PolyMultivector {
        PolyMultivector::zero(self.order)
    }

    pub fn mono(&self) -> Mono {
        Mono::one(self.nsym, self.dim)
    }

    pub fn constant(&self, c: Scalar) -> PolyMultivector {
        PolyMultivector::scalar_term(self.mono(), c, self.order)
    }

    pub fn one(&self) -> PolyMultivector {
        self.constant(Scalar::one())
    }

    pub fn coord(&self, i: usize) -> PolyMultivector {
        let mut m = self.mono();
        m.exps[i] = 1;
        PolyMultivector::basis(m, self.order)
    }

    pub fn partial(&self, i: usize) -> PolyMultivector {
        let mut m = self.mono();
        m.wedge = 1 << i;
        PolyMultivector::basis(m, self.order)
    }

    pub fn sym(&self, l: usize) -> PolyMultivector {
        let mut m = self.mono();
        m.sym[l] = 1;
        PolyMultivector::basis(m, self.order)
    }

    /// `c · x^exps ∂_{wedge}` with the wedge given as a list of indices in order.
    pub fn term(&self, c: Scalar, exps: &[u16], dirs: &[usize]) -> PolyMultivector {
        let mut m = self.mono();
        m.exps.copy_from_slice(exps);
        let mut x = PolyMultivector::scalar_term(m, c, self.order);
        for &i in dirs {
            x = wedge(&x, &self.partial(i));
        }
        x
    }

    /// Re-embeds an element from a smaller ambient space, placing its
    /// coordinates at `offset..` and its Sym generators at `0..`.
    pub fn embed(&self, x: &PolyMultivector, offset: usize) -> PolyMultivector {
        let mut out = PolyMultivector::zero(x.order());
        for (m, c) in x.iter() {
            let mut m2 = self.mono();
            m2.sym[..m.nsym()].copy_from_slice(&m.sym);
            m2.exps[offset..offset + m.dim()].copy_from_slice(&m.exps);
            m2.wedge = m.wedge << offset;
            out.add_term(m2, c);
        }
        out
    }
}

/// `{f, g} = π(df, dg) = Σ_{a,b} ∂_a f ∂_b g ι_b ι_a π` for functions `f`, `g`.
pub fn poisson_bracket(pi: &PolyMultivector, f: &PolyMultivector, g: &PolyMultivector) -> PolyMultivector {
    let dim = match pi.keys().next().or_else(|| f.keys().next()) {
        Some(k) => k.dim(),
        None => return PolyMultivector::zero(pi.order()),
    };
    let mut out = PolyMultivector::zero(pi.order());
    for a in 0..dim {
        let fa = partial(f, a);
        if fa.is_zero() {
            continue;
        }
        let ia = insert_coordinate(a, pi);
        for b in 0..dim {
            let gb = partial(g, b);
            if gb.is_zero() {
                continue;
            }
            let v = insert_coordinate(b, &ia);
            if !v.is_zero() {
                out += &wedge(&wedge(&fa, &gb), &v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::scalar::int;

    fn r2() -> PolySpace {
        PolySpace::new(0, 2, 0)
    }

    #[test]
    fn schouten_examples() {
        let s = r2();
        let dx = s.partial(0);
        let xdx = wedge(&s.coord(0), &dx);
        assert_eq!(schouten(&dx, &xdx), dx);
        let pi = wedge(&s.partial(0), &s.partial(1));
        assert!(schouten(&pi, &pi).is_zero());
        // [X, f] = X(f)
        assert_eq!(schouten(&dx, &s.coord(0)), s.one());
        assert_eq!(schouten(&s.coord(0), &dx), -s.one());
    }

    #[test]
    fn wedge_examples() {
        let s = r2();
        let (dx, dy) = (s.partial(0), s.partial(1));
        assert!(wedge(&dx, &dx).is_zero());
        assert_eq!(wedge(&dx, &dy), -wedge(&dy, &dx));
        let lhs = wedge(&wedge(&s.coord(0), &dx), &wedge(&s.coord(1), &dy));
        let rhs = wedge(&wedge(&s.coord(0), &s.coord(1)), &wedge(&dx, &dy));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn insertion_examples() {
        let s = r2();
        let (dx, dy) = (s.partial(0), s.partial(1));
        let pi = wedge(&dx, &dy);
        assert_eq!(insert_coordinate(0, &pi), dy);
        assert!(insert_coordinate(0, &dy).is_zero());
        // ι_{x dy}(∂x∧∂y) = x · ι_{dy}(∂x∧∂y) = -x ∂x
        let got = wedge(&s.coord(0), &insert_coordinate(1, &pi));
        assert_eq!(got, -wedge(&s.coord(0), &dx));
    }

    #[test]
    fn lie_derivative_examples() {
        let s = r2();
        let (dx, dy) = (s.partial(0), s.partial(1));
        let xdy = wedge(&s.coord(0), &dy);
        assert_eq!(lie_derivative(&dx, &xdy), dy);
        let v = &xdy + &wedge(&s.coord(1), &dx);
        assert!(lie_derivative(&v, &v).is_zero());
        let xdx = wedge(&s.coord(0), &dx);
        assert_eq!(lie_derivative(&xdx, &wedge(&dx, &dy)), -wedge(&dx, &dy));
        assert!(try_lie_derivative(&wedge(&dx, &dy), &dx).is_err());
    }

    #[test]
    fn shape_mismatch_is_an_argument_error() {
        let a = PolySpace::new(0, 2, 0).partial(0);
        let b = PolySpace::new(0, 3, 0).partial(0);
        assert!(matches!(try_schouten(&a, &b), Err(Error::Argument(_))));
        assert!(try_wedge(&a, &a.scale(&int(2))).is_ok());
    }

    #[test]
    fn embed_shifts_coordinates() {
        let small = PolySpace::new(0, 2, 0);
        let big = PolySpace::new(1, 4, 0);
        assert_eq!(big.embed(&small.partial(1), 2), big.partial(3));
    }
}
