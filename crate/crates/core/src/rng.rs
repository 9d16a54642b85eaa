//! Seeded sampling.
//!
//! Every random draw comes from a ChaCha20 generator keyed by the user seed.
//! Independent streams are selected with ChaCha's 64-bit stream id:
//! `stream = (sample << 16) | factor`, where `sample` numbers the product
//! state being drawn (a multistart index, a mixture term, ...) and `factor`
//! is the partition block. Results therefore do not depend on thread
//! scheduling or on how many other samples are drawn.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::hilbert::{normalized, CompositeSpace, ProductVector};
use crate::partition::Partition;

const FACTOR_BITS: u32 = 16;

pub fn stream(seed: u64, sample: u64, factor: u64) -> ChaCha20Rng {
    debug_assert!(factor < (1 << FACTOR_BITS));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream((sample << FACTOR_BITS) | factor);
    rng
}

/// Haar-distributed unit vector: i.i.d. complex Gaussian entries, normalized
/// and phase-fixed.
pub fn haar_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(v) = normalized(v) {
            return v;
        }
    }
}

/// Product vector with factor-wise Haar-random factors drawn from
/// `stream(seed, sample, j)` for block `j`.
pub fn haar_product(
    space: &CompositeSpace,
    partition: &Partition,
    seed: u64,
    sample: u64,
) -> Result<ProductVector> {
    let factors = partition
        .blocks()
        .iter()
        .enumerate()
        .map(|(j, block)| haar_vector(&mut stream(seed, sample, j as u64), space.block_dim(block)))
        .collect();
    ProductVector::new(space, partition.clone(), factors)
}

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE-like), used by
/// tests and benchmarks.
pub fn random_hermitian(space: &CompositeSpace, seed: u64) -> crate::hilbert::HermitianOperator {
    let dim = space.total_dim();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        data[r * dim + r] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for c in r + 1..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
            data[r * dim + c] = z;
            data[c * dim + r] = z.conj();
        }
    }
    crate::hilbert::HermitianOperator::new(space.clone(), data).expect("Hermitian by construction")
}

/// Haar-random unitary on `dim` dimensions via QR of a complex Ginibre
/// matrix with the diagonal phases of R divided out.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> nalgebra::DMatrix<Complex64> {
    let g = nalgebra::DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for c in 0..dim {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..dim {
            q[(row, c)] *= phase;
        }
    }
    q
}
