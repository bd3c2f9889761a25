//! Polynomial multivector calculus on ℝ^m with optional even Sym𝔤* generators.

pub mod calculus;
pub mod forms;
pub mod lie;
pub mod mono;

pub use calculus::{
    insert_coordinate, lie_derivative, partial, partial_sym, poisson_bracket, schouten, try_lie_derivative,
    try_schouten, try_wedge, wedge, PolyMultivector, PolySpace,
};
pub use forms::{diff_geo_identity_check, OneForm, TwoForm};
pub use lie::{check_invariance, InfinitesimalAction, LieAlgebraData};
pub use mono::Mono;

/// `ι_α X` for a one-form with polynomial coefficients.
pub fn insert_form(alpha: &OneForm, x: &PolyMultivector) -> PolyMultivector {
    alpha.insert(x)
}
