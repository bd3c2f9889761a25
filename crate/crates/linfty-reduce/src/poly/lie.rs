//! Finite-dimensional Lie algebras and infinitesimal actions by polynomial vector fields.

use num_traits::Zero;

use super::calculus::{schouten, PolyMultivector};
use crate::error::{Error, Result};
use crate::graded::scalar::int;
use crate::graded::Scalar;

/// Structure constants `f^k_ij` with `[e_i, e_j] = f^k_ij e_k` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    dim: usize,
    f: Vec<Scalar>,
}

impl LieAlgebraData {
    /// Builds from the nonzero entries `((i, j, k), f^k_ij)`; both orders of
    /// `(i, j)` must be listed.
    pub fn new(dim: usize, entries: &[((usize, usize, usize), Scalar)]) -> Result<Self> {
        let mut f = vec![Scalar::zero(); dim * dim * dim];
        for (n, ((i, j, k), c)) in entries.iter().enumerate() {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::invalid(format!("structure_constants[{n}]"), "index out of range"));
            }
            f[(i * dim + j) * dim + k] += c;
        }
        let alg = LieAlgebraData { dim, f };
        alg.validate()?;
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData { dim, f: vec![Scalar::zero(); dim * dim * dim] }
    }

    /// so(3) with `f^k_ij = ε_ijk`.
    pub fn so3() -> Self {
        let mut entries = Vec::new();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            entries.push(((i, j, k), int(1)));
            entries.push(((j, i, k), int(-1)));
        }
        Self::new(3, &entries).expect("so(3) is a Lie algebra")
    }

    /// The 2-dimensional nonabelian algebra `[e_1, e_2] = e_2`.
    pub fn affine() -> Self {
        Self::new(2, &[((0, 1, 1), int(1)), ((1, 0, 1), int(-1))]).expect("aff(1) is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn f(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.f[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_abelian(&self) -> bool {
        self.f.iter().all(Zero::is_zero)
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> Vec<((usize, usize, usize), Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.f(i, j, k);
                    if !c.is_zero() {
                        out.push(((i, j, k), c.clone()));
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.f(i, j, k) != &-self.f(j, i, k) {
                        return Err(Error::invalid(
                            "structure_constants",
                            format!(
                                "antisymmetry fails: f^{}_{}{} != -f^{}_{}{}",
                                k + 1,
                                i + 1,
                                j + 1,
                                k + 1,
                                j + 1,
                                i + 1
                            ),
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = Scalar::zero();
                        for m in 0..n {
                            s += self.f(i, j, m) * self.f(m, k, l)
                                + self.f(j, k, m) * self.f(m, i, l)
                                + self.f(k, i, m) * self.f(m, j, l);
                        }
                        if !s.is_zero() {
                            return Err(Error::invalid(
                                "structure_constants",
                                format!(
                                    "Jacobi identity fails at (i,j,k,l) = ({},{},{},{})",
                                    i + 1,
                                    j + 1,
                                    k + 1,
                                    l + 1
                                ),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Fundamental vector fields `X_i = (e_i)_C` with `[X_i, X_j] = −f^k_ij X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalAction {
    algebra: LieAlgebraData,
    fields: Vec<PolyMultivector>,
}

impl InfinitesimalAction {
    pub fn new(algebra: LieAlgebraData, fields: Vec<PolyMultivector>) -> Result<Self> {
        if fields.len() != algebra.dim() {
            return Err(Error::invalid("action", format!("expected {} fields, got {}", algebra.dim(), fields.len())));
        }
        for (i, x) in fields.iter().enumerate() {
            if x.keys().any(|m| m.arity() != 1 || m.sym_degree() != 0) {
                return Err(Error::invalid(format!("action[{i}]"), "not a polynomial vector field"));
            }
        }
        for i in 0..fields.len() {
            for j in 0..fields.len() {
                let mut r = schouten(&fields[i], &fields[j]);
                for (k, xk) in fields.iter().enumerate() {
                    r.add_scaled(xk, algebra.f(i, j, k));
                }
                if !r.is_zero() {
                    return Err(Error::invalid(
                        format!("action[{i}]"),
                        format!("[X_{}, X_{}] != -f^k X_k (residual {:?})", i + 1, j + 1, r),
                    ));
                }
            }
        }
        Ok(InfinitesimalAction { algebra, fields })
    }

    pub fn algebra(&self) -> &LieAlgebraData {
        &self.algebra
    }

    pub fn fields(&self) -> &[PolyMultivector] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &PolyMultivector {
        &self.fields[i]
    }
}

/// True iff `𝓛_{X_i} X = 0` for every fundamental field.
pub fn check_invariance(action: &InfinitesimalAction, x: &PolyMultivector) -> bool {
    action.fields().iter().all(|v| schouten(v, x).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::calculus::{wedge, PolySpace};

    fn rotations(s: &PolySpace) -> Vec<PolyMultivector> {
        // L_i = ε_ijk x_j ∂_k
        let l = |j: usize, k: usize| &wedge(&s.coord(j), &s.partial(k)) - &wedge(&s.coord(k), &s.partial(j));
        vec![l(1, 2), l(2, 0), l(0, 1)]
    }

    #[test]
    fn rejects_jacobi_violation() {
        // perturbed so(3): adding f^1_12 breaks Jacobi
        let mut e = LieAlgebraData::so3().entries();
        e.push(((0, 1, 0), int(1)));
        e.push(((1, 0, 0), int(-1)));
        assert!(matches!(LieAlgebraData::new(3, &e), Err(Error::Invalid { .. })));
        assert!(LieAlgebraData::new(2, &[((0, 1, 1), int(1))]).is_err());
    }

    #[test]
    fn rotation_action_is_anti_homomorphism() {
        let s = PolySpace::new(0, 3, 0);
        let act = InfinitesimalAction::new(LieAlgebraData::so3(), rotations(&s)).unwrap();
        let euler = &(&wedge(&s.coord(0), &s.partial(0)) + &wedge(&s.coord(1), &s.partial(1)))
            + &wedge(&s.coord(2), &s.partial(2));
        assert!(check_invariance(&act, &euler));
        assert!(!check_invariance(&act, &s.partial(0)));
        // the opposite sign convention is rejected
        let neg: Vec<_> = rotations(&s).iter().map(|x| -x).collect();
        assert!(InfinitesimalAction::new(LieAlgebraData::so3(), neg).is_err());
    }

    #[test]
    fn translation_invariance() {
        let s = PolySpace::new(0, 2, 0);
        let act = InfinitesimalAction::new(LieAlgebraData::abelian(1), vec![s.partial(0)]).unwrap();
        assert!(check_invariance(&act, &s.partial(1)));
        assert!(!check_invariance(&act, &wedge(&s.coord(0), &s.partial(1))));
    }
}
