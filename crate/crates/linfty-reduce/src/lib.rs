//! Exact computer algebra for curved L∞-algebras, homotopy transfer and the
//! L∞-reduction of equivariant multivector fields.

pub mod equivariant;
pub mod error;
pub mod fixture;
pub mod graded;
pub mod hpl;
pub mod linalg;
pub mod linfty;
pub mod par;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod retract;
pub mod suites;

pub use error::{Error, Result};
