//! Benchmark states and seeded sampling of product, separable and noisy states.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::hilbert::{
    fix_phase, kron_vectors, normalized, CompositeSpace, DensityMatrix, HermitianOperator,
    ProductVector,
};
use crate::partition::Partition;
use crate::rng;

/// Unit vector on a composite space, phase-fixed like product factors.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    space: CompositeSpace,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Normalizes and phase-fixes `amplitudes`; a zero vector is rejected.
    pub fn new(space: CompositeSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dimension {}",
                amplitudes.len(),
                space.total_dim()
            )));
        }
        let mut amplitudes = normalized(amplitudes)?;
        fix_phase(&mut amplitudes);
        Ok(Self { space, amplitudes })
    }

    pub fn from_product(space: &CompositeSpace, v: &ProductVector) -> Result<Self> {
        let mut amplitudes = v.to_dense(space)?;
        fix_phase(&mut amplitudes);
        Ok(Self {
            space: space.clone(),
            amplitudes,
        })
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> HermitianOperator {
        HermitianOperator::projector(self.space.clone(), &self.amplitudes)
            .expect("dimensions match by construction")
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_parts_unchecked(
            self.space.clone(),
            self.projector().as_slice().to_vec(),
        )
    }
}

/// `(1/√d) Σ_k |k⟩^{⊗n}`.
pub fn ghz(n: usize, d: usize) -> Result<PureState> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "GHZ state needs n >= 2 and d >= 2 (got n={n}, d={d})"
        )));
    }
    let space = CompositeSpace::new(vec![d; n])?;
    let mut amps = vec![Complex64::new(0.0, 0.0); space.total_dim()];
    for k in 0..d {
        amps[space.flat_index(&vec![k; n])] = Complex64::new(1.0, 0.0);
    }
    PureState::new(space, amps)
}

/// `(1/√n) Σ_j |0…1_j…0⟩` on `n` qubits.
pub fn w_state(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "W state needs n >= 2 (got {n})"
        )));
    }
    let space = CompositeSpace::qubits(n)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); space.total_dim()];
    for j in 0..n {
        amps[1 << (n - 1 - j)] = Complex64::new(1.0, 0.0);
    }
    PureState::new(space, amps)
}

/// Factor-wise Haar-random product vector, deterministic per seed.
pub fn random_product(
    space: &CompositeSpace,
    partition: &Partition,
    seed: u64,
) -> Result<ProductVector> {
    rng::haar_product(space, partition, seed, 0)
}

/// `Σ_k p_k |a_k⟩⟨a_k|` over `n_terms` seeded product vectors with
/// Dirichlet(1, ..., 1) weights.
pub fn random_separable_density(
    space: &CompositeSpace,
    partition: &Partition,
    n_terms: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be >= 1".into()));
    }
    // weights come from a stream no product sample uses
    let mut wrng = rng::stream(seed, u64::MAX >> 16, 0);
    let raw: Vec<f64> = (0..n_terms).map(|_| wrng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let dim = space.total_dim();
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (k, w) in raw.iter().enumerate() {
        let v = rng::haar_product(space, partition, seed, k as u64)?;
        let psi = kron_dense(space, &v)?;
        let p = w / total;
        for (r, a) in psi.iter().enumerate() {
            let pa = a * p;
            for (c, b) in psi.iter().enumerate() {
                data[r * dim + c] += pa * b.conj();
            }
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(space.clone(), data))
}

fn kron_dense(space: &CompositeSpace, v: &ProductVector) -> Result<Vec<Complex64>> {
    if v.partition().is_canonical() {
        Ok(kron_vectors(v.factors().iter().map(Vec::as_slice)))
    } else {
        v.to_dense(space)
    }
}

/// `p|ψ⟩⟨ψ| + (1 − p)·1/D`.
pub fn werner_mix(psi: &PureState, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "mixing parameter {p} outside [0, 1]"
        )));
    }
    let space = psi.space().clone();
    let dim = space.total_dim();
    let mut data: Vec<Complex64> = psi.projector().as_slice().iter().map(|z| z * p).collect();
    for k in 0..dim {
        data[k * dim + k] += (1.0 - p) / dim as f64;
    }
    Ok(DensityMatrix::from_parts_unchecked(space, data))
}
