//! Exact scalars, truncated ħ-series, graded elements, Koszul signs and symmetric words.

pub mod element;
pub mod scalar;
pub mod series;
pub mod sign;
pub mod symword;

pub use element::{BasisKey, Gen, GradedElement};
pub use scalar::Scalar;
pub use series::{series_geometric_inverse, series_mul, FormalSeries};
pub use sign::{koszul_sign, shuffles, Permutation};
pub use symword::{SymElement, SymWord};
