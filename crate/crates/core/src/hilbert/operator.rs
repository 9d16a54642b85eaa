use nalgebra::DMatrix;
use num_complex::Complex64;

use super::space::CompositeSpace;
use crate::error::{Error, Result};
use crate::linalg;

/// Deviation from Hermiticity that is silently symmetrized away; anything
/// larger is rejected.
pub const HERMITIAN_GATE: f64 = 1e-8;

/// Dense Hermitian operator on a composite space, stored row-major in the
/// lexicographic product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    space: CompositeSpace,
    data: Vec<Complex64>,
}

/// Largest `|M_ij - conj(M_ji)|` of a row-major square matrix.
pub(crate) fn hermitian_deviation(dim: usize, data: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..dim {
        for c in r..dim {
            let d = (data[r * dim + c] - data[c * dim + r].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// Replaces `M` by `(M + M†)/2` in place.
pub(crate) fn symmetrize(dim: usize, data: &mut [Complex64]) {
    for r in 0..dim {
        for c in r..dim {
            let avg = (data[r * dim + c] + data[c * dim + r].conj()) * 0.5;
            data[r * dim + c] = avg;
            data[c * dim + r] = avg.conj();
        }
    }
}

impl HermitianOperator {
    /// Validates a row-major `D × D` matrix; deviations up to
    /// [`HERMITIAN_GATE`] are symmetrized.
    pub fn new(space: CompositeSpace, mut entries: Vec<Complex64>) -> Result<Self> {
        let dim = space.total_dim();
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim}x{dim} = {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        let deviation = hermitian_deviation(dim, &entries);
        if deviation > HERMITIAN_GATE {
            return Err(Error::NotHermitian { deviation });
        }
        symmetrize(dim, &mut entries);
        Ok(Self {
            space,
            data: entries,
        })
    }

    pub fn from_rows(space: CompositeSpace, rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = space.total_dim();
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {dim}x{dim} matrix"
            )));
        }
        Self::new(space, rows.concat())
    }

    pub fn from_real_rows(space: CompositeSpace, rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(space, &rows)
    }

    pub fn from_fn(
        space: CompositeSpace,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        let dim = space.total_dim();
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self::new(space, data)
    }

    pub fn identity(space: CompositeSpace) -> Self {
        let dim = space.total_dim();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            data[k * dim + k] = Complex64::new(1.0, 0.0);
        }
        Self { space, data }
    }

    pub fn diagonal(space: CompositeSpace, diag: &[f64]) -> Result<Self> {
        let dim = space.total_dim();
        if diag.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of length {} for dimension {dim}",
                diag.len()
            )));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (k, &x) in diag.iter().enumerate() {
            data[k * dim + k] = Complex64::new(x, 0.0);
        }
        Self::new(space, data)
    }

    /// Rank-one projector `|ψ⟩⟨ψ|` (the vector is used as given).
    pub fn projector(space: CompositeSpace, psi: &[Complex64]) -> Result<Self> {
        let dim = space.total_dim();
        if psi.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for dimension {dim}",
                psi.len()
            )));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for a in psi {
            for b in psi {
                data.push(a * b.conj());
            }
        }
        Ok(Self { space, data })
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        let d = self.dim();
        &self.data[r * d..(r + 1) * d]
    }

    /// `alpha·L + beta·1`.
    pub fn affine(&self, alpha: f64, beta: f64) -> Self {
        let dim = self.dim();
        let mut data: Vec<Complex64> = self.data.iter().map(|z| z * alpha).collect();
        for k in 0..dim {
            data[k * dim + k] += beta;
        }
        Self {
            space: self.space.clone(),
            data,
        }
    }

    /// `U L U†` for a dense unitary `U` of matching dimension.
    pub fn conjugated_by(&self, unitary: &DMatrix<Complex64>) -> Result<Self> {
        let dim = self.dim();
        if unitary.nrows() != dim || unitary.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, operator is {dim}x{dim}",
                unitary.nrows(),
                unitary.ncols()
            )));
        }
        let out = unitary * self.to_dmatrix() * unitary.adjoint();
        let mut data: Vec<Complex64> = (0..dim * dim).map(|k| out[(k / dim, k % dim)]).collect();
        symmetrize(dim, &mut data);
        Ok(Self {
            space: self.space.clone(),
            data,
        })
    }

    pub fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.dim(), self.dim(), &self.data)
    }

    /// Full spectrum, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::hermitian_eigenvalues(self.to_dmatrix())
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `⟨ψ|L|ψ⟩` for a dense vector.
    pub fn sandwich(&self, psi: &[Complex64]) -> Result<Complex64> {
        let dim = self.dim();
        if psi.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for dimension {dim}",
                psi.len()
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, a) in psi.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = self.row(r);
            let s: Complex64 = row.iter().zip(psi).map(|(l, b)| l * b).sum();
            acc += a.conj() * s;
        }
        Ok(acc)
    }

    /// Operator with subsystems relabeled so that new subsystem `k` is old
    /// subsystem `order[k]`.
    pub fn permute_subsystems(&self, order: &[usize]) -> Self {
        let space = self.space.permuted(order);
        let dim = self.dim();
        let old_of_new: Vec<usize> = (0..dim)
            .map(|flat| {
                let new_digits = space.digits(flat);
                let mut old_digits = vec![0; order.len()];
                for (k, &i) in order.iter().enumerate() {
                    old_digits[i] = new_digits[k];
                }
                self.space.flat_index(&old_digits)
            })
            .collect();
        let mut data = Vec::with_capacity(dim * dim);
        for &r in &old_of_new {
            let row = self.row(r);
            data.extend(old_of_new.iter().map(|&c| row[c]));
        }
        Self { space, data }
    }
}

pub fn make_operator(space: CompositeSpace, entries: Vec<Complex64>) -> Result<HermitianOperator> {
    HermitianOperator::new(space, entries)
}

/// Kronecker product in list order; subsystem dimensions are concatenated.
pub fn tensor_product(ops: &[HermitianOperator]) -> Result<HermitianOperator> {
    let (first, rest) = ops
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("tensor product of an empty list".into()))?;
    let mut acc = first.clone();
    for op in rest {
        let (da, db) = (acc.dim(), op.dim());
        let dim = da * db;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i1 in 0..da {
            for j1 in 0..da {
                let a = acc.data[i1 * da + j1];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..db {
                    let out_row = (i1 * db + i2) * dim + j1 * db;
                    let in_row = &op.data[i2 * db..(i2 + 1) * db];
                    for (slot, b) in data[out_row..out_row + db].iter_mut().zip(in_row) {
                        *slot = a * b;
                    }
                }
            }
        }
        acc = HermitianOperator {
            space: acc.space.concat(&op.space),
            data,
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn stores_sigma_z() {
        let op = make_operator(
            CompositeSpace::new(vec![2]).unwrap(),
            vec![c(1.0), c(0.0), c(0.0), c(-1.0)],
        )
        .unwrap();
        assert_eq!(op.entry(0, 0), c(1.0));
        assert_eq!(op.entry(1, 1), c(-1.0));
    }

    #[test]
    fn identity_from_entries() {
        let space = CompositeSpace::new(vec![2, 2]).unwrap();
        let mut e = vec![c(0.0); 16];
        for k in 0..4 {
            e[k * 4 + k] = c(1.0);
        }
        let op = make_operator(space.clone(), e).unwrap();
        assert_eq!(op, HermitianOperator::identity(space));
    }

    #[test]
    fn rejects_non_hermitian() {
        let r = make_operator(
            CompositeSpace::new(vec![2]).unwrap(),
            vec![c(0.0), c(1.0), c(0.0), c(0.0)],
        );
        assert!(matches!(r, Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn rejects_wrong_size() {
        let r = make_operator(CompositeSpace::new(vec![2]).unwrap(), vec![c(1.0); 3]);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn symmetrizes_small_deviation() {
        let op = make_operator(
            CompositeSpace::new(vec![2]).unwrap(),
            vec![c(1.0), c(0.5 + 1e-9), c(0.5), Complex64::new(-1.0, 1e-10)],
        )
        .unwrap();
        assert_eq!(op.entry(0, 1), op.entry(1, 0).conj());
        assert_eq!(op.entry(1, 1).im, 0.0);
        assert!(hermitian_deviation(2, op.as_slice()) == 0.0);
    }

    #[test]
    fn kronecker_examples() {
        let zz = tensor_product(&[pauli::z(), pauli::z()]).unwrap();
        let diag = HermitianOperator::diagonal(
            CompositeSpace::qubits(2).unwrap(),
            &[1.0, -1.0, -1.0, 1.0],
        )
        .unwrap();
        assert_eq!(zz, diag);
        assert_eq!(zz.space().dims(), &[2, 2]);

        let ii = tensor_product(&[pauli::identity(), pauli::identity()]).unwrap();
        assert_eq!(
            ii,
            HermitianOperator::identity(CompositeSpace::qubits(2).unwrap())
        );

        let xx = tensor_product(&[pauli::x(), pauli::x()]).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                let expect = if r + col == 3 { 1.0 } else { 0.0 };
                assert_eq!(xx.entry(r, col), c(expect));
            }
        }
        assert!(tensor_product(&[]).is_err());
    }

    #[test]
    fn permutation_moves_factors() {
        let xyz = tensor_product(&[pauli::x(), pauli::y(), pauli::z()]).unwrap();
        let xzy = tensor_product(&[pauli::x(), pauli::z(), pauli::y()]).unwrap();
        assert!(xyz.permute_subsystems(&[0, 2, 1]).max_abs_diff(&xzy) < 1e-15);
    }
}
