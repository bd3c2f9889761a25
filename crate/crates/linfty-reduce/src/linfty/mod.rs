//! L∞-algebras on symmetric coalgebras, their morphisms and twisting.

pub mod morphism;
pub mod structure;

pub use morphism::{
    check_linfty_morphism, check_orders, coalgebra_morphism_apply, mc_pushforward, mc_pushforward_bounded, memoized,
    morphism_component, morphism_residual, LinftyMorphism, MorphismReport, OrderCheck,
};
pub use structure::{
    coderivation, coderivation_component, coderivation_component_on, BilinearMap, Dgla, LinearMap, LinftyStructure,
    WordMap,
};
