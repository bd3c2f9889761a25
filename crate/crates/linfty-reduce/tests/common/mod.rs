#![allow(dead_code)]

use linfty_reduce::equivariant::MomentumPerturbation;
pub use linfty_reduce::fixture::samples::{models as cases, SampleModel as Case, ARITY_CAP as CAP};
use linfty_reduce::poly::PolyMultivector;

pub fn classical(c: &Case, order: usize) -> (PolyMultivector, PolyMultivector) {
    (c.reduced(order), c.classical(order).unwrap())
}

/// The classical fixture at order `n` and its gauge perturbation.
pub fn perturbed(c: &Case, n: usize) -> (PolyMultivector, PolyMultivector, PolyMultivector, MomentumPerturbation) {
    let (red, pi) = classical(c, n);
    let (pi2, jp) = c.perturbed(n).unwrap();
    (red, pi, pi2, jp)
}
