use num_complex::Complex64;

use super::operator::{hermitian_deviation, symmetrize, HermitianOperator, HERMITIAN_GATE};
use super::space::CompositeSpace;
use crate::error::{Error, Result};
use crate::linalg;

pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-10;

/// Positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    space: CompositeSpace,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (symmetrizing below the gate), unit trace and
    /// positivity.
    pub fn new(space: CompositeSpace, mut entries: Vec<Complex64>) -> Result<Self> {
        let dim = space.total_dim();
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim}x{dim} = {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let deviation = hermitian_deviation(dim, &entries);
        if deviation > HERMITIAN_GATE {
            return Err(Error::NotHermitian { deviation });
        }
        symmetrize(dim, &mut entries);
        let rho = Self {
            space,
            data: entries,
        };
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotDensityMatrix(format!("trace {tr}")));
        }
        let min = rho.min_eigenvalue()?;
        if min < -PSD_TOL {
            return Err(Error::NotDensityMatrix(format!("eigenvalue {min}")));
        }
        Ok(rho)
    }

    pub(crate) fn from_parts_unchecked(space: CompositeSpace, data: Vec<Complex64>) -> Self {
        Self { space, data }
    }

    /// `|ψ⟩⟨ψ|` for a unit vector.
    pub fn pure(space: CompositeSpace, psi: &[Complex64]) -> Result<Self> {
        let proj = HermitianOperator::projector(space.clone(), psi)?;
        let rho = Self {
            space,
            data: proj.as_slice().to_vec(),
        };
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotDensityMatrix(format!(
                "state vector has squared norm {tr}"
            )));
        }
        Ok(rho)
    }

    pub fn maximally_mixed(space: CompositeSpace) -> Self {
        let dim = space.total_dim();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            data[k * dim + k] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Self { space, data }
    }

    /// Convex combination `Σ w_k ρ_k`; weights must be non-negative and sum to one.
    pub fn mixture(terms: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let total: f64 = terms.iter().map(|(w, _)| w).sum();
        if terms.iter().any(|(w, _)| *w < 0.0 || !w.is_finite()) || (total - 1.0).abs() > TRACE_TOL
        {
            return Err(Error::InvalidArgument(format!(
                "mixture weights must be a probability vector (sum {total})"
            )));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); first.data.len()];
        for (w, rho) in terms {
            if rho.space != first.space {
                return Err(Error::DimensionMismatch(
                    "mixture over different spaces".into(),
                ));
            }
            for (acc, z) in data.iter_mut().zip(&rho.data) {
                *acc += z * *w;
            }
        }
        Ok(Self {
            space: first.space.clone(),
            data,
        })
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    pub fn trace(&self) -> f64 {
        let d = self.dim();
        (0..d).map(|k| self.data[k * d + k].re).sum()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let m = nalgebra::DMatrix::from_row_slice(self.dim(), self.dim(), &self.data);
        Ok(linalg::hermitian_eigenvalues(m)?[0])
    }

    /// `tr(ρ L)`; the imaginary part is roundoff for Hermitian inputs and is dropped.
    pub fn expectation(&self, l: &HermitianOperator) -> Result<f64> {
        if l.space() != &self.space {
            return Err(Error::DimensionMismatch(format!(
                "state on {:?}, operator on {:?}",
                self.space.dims(),
                l.space().dims()
            )));
        }
        // tr(ρL) = Σ_{rc} ρ_rc L_cr = Σ_{rc} ρ_rc conj(L_rc)
        let z: Complex64 = self
            .data
            .iter()
            .zip(l.as_slice())
            .map(|(r, x)| r * x.conj())
            .sum();
        Ok(z.re)
    }
}
