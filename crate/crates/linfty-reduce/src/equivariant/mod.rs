//! Equivariant reduction of formal Poisson structures on `C × 𝔤*`.

pub mod cartan;
pub mod model;
pub mod probes;
pub mod reduction;
pub mod samples;
pub mod taylor;

pub use cartan::ConnectionData;
pub use model::ProductModel;
pub use probes::{ProbeSampler, ProbeShape};
pub use reduction::{CohomologyComparison, GaugeResult, MomentumPerturbation};
pub use taylor::TaylorElement;
