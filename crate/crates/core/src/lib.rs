//! Numerical toolkit for the multipartite separability eigenvalue equations
//! and the entanglement witnesses built from their solutions.
//!
//! For a Hermitian `L` on `H_1 ⊗ … ⊗ H_N` and a partition `I_1 : … : I_K` of
//! the subsystems, [`solver`] finds product vectors `|a_1, …, a_K⟩` and values
//! `g` with `L_{a_1..a_{j-1},a_{j+1}..a_K} |a_j⟩ = g |a_j⟩` for every block.
//! The largest such `g` is the separable bound `f_sup(L)`, and
//! `W = f_sup(L)·1 − L` is an entanglement witness ([`witness`]).

pub mod cli;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod pauli;
pub mod rng;
pub mod solver;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use hilbert::{
    canonicalize, expectation, make_operator, reduce_operator, tensor_product, CompositeSpace,
    DensityMatrix, HermitianOperator, ProductVector,
};
pub use partition::{is_refinement, parse_partition, Partition};
pub use solver::{
    block_update, enumerate, enumerate_runs, f_bound, iterate, multistart, multistart_runs,
    residual, summarize, Mode, MseSolution, MseSolutionSet, SolverConfig,
};
pub use states::PureState;
pub use witness::{build_witness, criterion, witness_expectation, Verdict, Witness};
