use num_complex::Complex64;

use super::space::CompositeSpace;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Tolerance used to decide which component is "the first of largest modulus".
const PHASE_TIE: f64 = 1e-10;

/// Rotates the global phase so that the first component of largest modulus
/// is real and non-negative.
pub fn fix_phase(v: &mut [Complex64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - PHASE_TIE))
        .unwrap_or(0);
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[pivot] = Complex64::new(v[pivot].re, 0.0);
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Normalizes and phase-fixes; fails on a (numerically) zero vector.
pub fn normalized(mut v: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = norm(&v);
    if !(n.is_finite() && n > 1e-300) {
        return Err(Error::InvalidArgument(
            "cannot normalize a zero vector".into(),
        ));
    }
    // leave already-unit vectors bit-identical so file round trips are exact
    if (n - 1.0).abs() > 4.0 * f64::EPSILON {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
    fix_phase(&mut v);
    Ok(v)
}

/// Dense Kronecker product of vectors, first argument slowest.
pub fn kron_vectors<'a>(parts: impl IntoIterator<Item = &'a [Complex64]>) -> Vec<Complex64> {
    let mut acc = vec![Complex64::new(1.0, 0.0)];
    for part in parts {
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for a in &acc {
            next.extend(part.iter().map(|b| a * b));
        }
        acc = next;
    }
    acc
}

/// One unit vector per partition block: `|a_1, ..., a_K⟩`.
///
/// Factor `j` lives on the subsystems of block `j` in ascending order,
/// lowest subsystem slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector {
    partition: Partition,
    factors: Vec<Vec<Complex64>>,
}

impl ProductVector {
    /// Checks factor dimensions against `space`, then normalizes and
    /// phase-fixes each factor.
    pub fn new(
        space: &CompositeSpace,
        partition: Partition,
        factors: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        check_partition(space, &partition)?;
        if factors.len() != partition.num_blocks() {
            return Err(Error::PartitionMismatch(format!(
                "{} factors for {} blocks",
                factors.len(),
                partition.num_blocks()
            )));
        }
        let mut fixed = Vec::with_capacity(factors.len());
        for (j, f) in factors.into_iter().enumerate() {
            let expect = space.block_dim(&partition.blocks()[j]);
            if f.len() != expect {
                return Err(Error::DimensionMismatch(format!(
                    "factor {} has length {}, block dimension is {expect}",
                    j + 1,
                    f.len()
                )));
            }
            fixed.push(normalized(f)?);
        }
        Ok(Self {
            partition,
            factors: fixed,
        })
    }

    /// Product of computational basis states, one basis index per block.
    pub fn basis(space: &CompositeSpace, partition: Partition, indices: &[usize]) -> Result<Self> {
        check_partition(space, &partition)?;
        if indices.len() != partition.num_blocks() {
            return Err(Error::PartitionMismatch(format!(
                "{} indices for {} blocks",
                indices.len(),
                partition.num_blocks()
            )));
        }
        let factors = partition
            .blocks()
            .iter()
            .zip(indices)
            .map(|(block, &k)| {
                let d = space.block_dim(block);
                if k >= d {
                    return Err(Error::InvalidArgument(format!(
                        "basis index {k} >= block dimension {d}"
                    )));
                }
                let mut v = vec![Complex64::new(0.0, 0.0); d];
                v[k] = Complex64::new(1.0, 0.0);
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { partition, factors })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn factors(&self) -> &[Vec<Complex64>] {
        &self.factors
    }

    pub fn factor(&self, j: usize) -> &[Complex64] {
        &self.factors[j]
    }

    pub fn num_blocks(&self) -> usize {
        self.factors.len()
    }

    /// Replaces factor `j` with a unit, phase-fixed vector.
    pub(crate) fn set_factor(&mut self, j: usize, factor: Vec<Complex64>) {
        debug_assert_eq!(factor.len(), self.factors[j].len());
        self.factors[j] = factor;
    }

    /// Same factors relabeled with another partition of identical block
    /// dimensions.
    pub(crate) fn with_partition(mut self, partition: Partition) -> Self {
        self.partition = partition;
        self
    }

    /// `|⟨a_j|b_j⟩|` for every block.
    pub fn factor_overlaps(&self, other: &ProductVector) -> Vec<f64> {
        self.factors
            .iter()
            .zip(&other.factors)
            .map(|(a, b)| inner(a, b).norm())
            .collect()
    }

    /// Dense amplitudes in the lexicographic basis of `space`. Works for any
    /// partition, canonical or not.
    pub fn to_dense(&self, space: &CompositeSpace) -> Result<Vec<Complex64>> {
        check_partition(space, &self.partition)?;
        if self.partition.is_canonical() {
            return Ok(kron_vectors(self.factors.iter().map(Vec::as_slice)));
        }
        let dims = space.dims();
        let owner = self.partition.block_of();
        let mut amps = Vec::with_capacity(space.total_dim());
        let mut local = vec![0usize; self.factors.len()];
        for flat in 0..space.total_dim() {
            local.iter_mut().for_each(|x| *x = 0);
            for (i, &digit) in space.digits(flat).iter().enumerate() {
                let j = owner[i];
                local[j] = local[j] * dims[i] + digit;
            }
            amps.push(
                local
                    .iter()
                    .zip(&self.factors)
                    .map(|(&k, f)| f[k])
                    .product(),
            );
        }
        Ok(amps)
    }
}

pub(crate) fn check_partition(space: &CompositeSpace, partition: &Partition) -> Result<()> {
    if partition.num_subsystems() != space.num_subsystems() {
        return Err(Error::PartitionMismatch(format!(
            "partition over {} subsystems, space has {}",
            partition.num_subsystems(),
            space.num_subsystems()
        )));
    }
    Ok(())
}
