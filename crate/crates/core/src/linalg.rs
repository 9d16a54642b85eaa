//! Thin wrappers over nalgebra's Hermitian eigensolver.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS_PER_DIM: usize = 1000;

/// Eigen-decomposition with eigenvalues sorted ascending. Column `k` of the
/// returned matrix is the eigenvector of `values[k]`.
pub struct SortedEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

pub fn hermitian_eigen(m: DMatrix<Complex64>) -> Result<SortedEigen> {
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, MAX_SWEEPS_PER_DIM * n.max(8))
        .ok_or(Error::EigenDecompositionFailure)?;
    if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigenDecompositionFailure);
    }
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep the solver's column order
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(SortedEigen { values, vectors })
}

pub fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|e| e.values)
}
