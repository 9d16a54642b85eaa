//! Dense reference computations shared by the integration tests. Nothing
//! here calls into the library's contraction code.
#![allow(dead_code)]

use msewitness::{CompositeSpace, HermitianOperator, Partition};
use num_complex::Complex64;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn qubits(n: usize) -> CompositeSpace {
    CompositeSpace::qubits(n).unwrap()
}

pub fn basis(dim: usize, k: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0); dim];
    v[k] = c(1.0);
    v
}

/// Mixed-radix digits of `flat`, subsystem 0 slowest.
pub fn digits(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        out[i] = flat % dims[i];
        flat /= dims[i];
    }
    out
}

/// Index of the block-local basis state picked out by `digits`.
pub fn local_index(dims: &[usize], block: &[usize], digits: &[usize]) -> usize {
    block.iter().fold(0, |acc, &i| acc * dims[i] + digits[i])
}

/// Full-space vector of a product of block factors, built entry by entry.
pub fn dense_product(
    space: &CompositeSpace,
    partition: &Partition,
    factors: &[Vec<Complex64>],
) -> Vec<Complex64> {
    let dims = space.dims();
    (0..space.total_dim())
        .map(|flat| {
            let d = digits(dims, flat);
            partition
                .blocks()
                .iter()
                .zip(factors)
                .map(|(b, f)| f[local_index(dims, b, &d)])
                .product()
        })
        .collect()
}

/// `⟨x|L|y⟩` by explicit double sum.
pub fn bracket(l: &HermitianOperator, x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let mut acc = c(0.0);
    for (r, xr) in x.iter().enumerate() {
        for (col, yc) in y.iter().enumerate() {
            acc += xr.conj() * l.entry(r, col) * yc;
        }
    }
    acc
}

/// Reduced operator on block `j`: entry (a, b) is `⟨v_a|L|v_b⟩` where `v_a`
/// replaces factor `j` by the basis vector `e_a`.
pub fn dense_reduce(
    l: &HermitianOperator,
    partition: &Partition,
    factors: &[Vec<Complex64>],
    j: usize,
) -> Vec<Vec<Complex64>> {
    let dj = factors[j].len();
    let with = |a: usize| {
        let mut fs = factors.to_vec();
        fs[j] = basis(dj, a);
        dense_product(l.space(), partition, &fs)
    };
    let vs: Vec<Vec<Complex64>> = (0..dj).map(with).collect();
    (0..dj)
        .map(|a| (0..dj).map(|b| bracket(l, &vs[a], &vs[b])).collect())
        .collect()
}

pub fn kron(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let (n, m) = (a.len(), b.len());
    (0..n * m)
        .map(|r| {
            (0..n * m)
                .map(|col| a[r / m][col / m] * b[r % m][col % m])
                .collect()
        })
        .collect()
}

pub fn operator(space: CompositeSpace, rows: &[Vec<Complex64>]) -> HermitianOperator {
    HermitianOperator::from_rows(space, rows).unwrap()
}

/// Partition from one block label per subsystem (labels need not be dense).
pub fn partition_from_labels(labels: &[usize]) -> Partition {
    let n = labels.len();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for (i, &lab) in labels.iter().enumerate() {
        match seen.iter().position(|&s| s == lab) {
            Some(k) => blocks[k].push(i),
            None => {
                seen.push(lab);
                blocks.push(vec![i]);
            }
        }
    }
    Partition::new(blocks, n).unwrap()
}

/// Proptest settings with a fixed RNG seed so runs are reproducible.
pub fn prop_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_2026),
        ..Default::default()
    }
}
