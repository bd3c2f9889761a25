//! Exact linear algebra over ℚ for finite spans of graded elements.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::graded::{BasisKey, GradedElement, Scalar};

/// Row-reduces in place; returns the pivot columns.
pub fn row_reduce(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    row_reduce(&mut rows.to_vec(), ncols).len()
}

/// A basis of `{x : A x = 0}` for `A` given by rows of length `ncols`.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::from_integer(1.into());
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Coordinates of scalar-coefficient elements (ħ⁰ part) in a common monomial basis.
pub struct Coordinates<B: BasisKey> {
    index: BTreeMap<B, usize>,
}

impl<B: BasisKey> Default for Coordinates<B> {
    fn default() -> Self {
        Coordinates { index: BTreeMap::new() }
    }
}

impl<B: BasisKey> Coordinates<B> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Registers every key of `x`.
    pub fn extend(&mut self, x: &GradedElement<B>) {
        for k in x.keys() {
            let n = self.index.len();
            self.index.entry(k.clone()).or_insert(n);
        }
    }

    /// The vector of `ħ^power` coefficients; keys must have been registered.
    pub fn vector(&self, x: &GradedElement<B>, power: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.index.len()];
        for (k, c) in x.iter() {
            v[self.index[k]] = c.coeff(power).clone();
        }
        v
    }
}

/// Rank of the span of the given elements (ħ⁰ coefficients).
pub fn span_rank<B: BasisKey>(xs: &[GradedElement<B>]) -> usize {
    let mut coords = Coordinates::new();
    for x in xs {
        coords.extend(x);
    }
    let rows: Vec<Vec<Scalar>> = xs.iter().map(|x| coords.vector(x, 0)).collect();
    rank(&rows, coords.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::scalar::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a, 3), 1);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Scalar = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert!(kernel(&a, 2).is_empty());
        assert_eq!(rank(&[], 3), 0);
        assert_eq!(kernel(&[], 2).len(), 2);
    }
}
