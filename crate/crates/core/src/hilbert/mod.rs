//! Composite Hilbert spaces, dense operators, product vectors and the
//! reduced-operator contraction.

mod contract;
mod density;
mod operator;
mod product;
mod space;

pub use contract::{canonicalize, expectation, reduce_operator, Canonical, SubsystemPermutation};
pub use density::{DensityMatrix, PSD_TOL, TRACE_TOL};
pub use operator::{make_operator, tensor_product, HermitianOperator, HERMITIAN_GATE};
pub use product::{fix_phase, inner, kron_vectors, norm, normalized, ProductVector};
pub use space::CompositeSpace;
