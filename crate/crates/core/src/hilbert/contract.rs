//! Contractions of an operator with product vectors.
//!
//! With the partition in canonical order, block `j` sits between a "left"
//! tensor factor `u = a_1 ⊗ ... ⊗ a_{j-1}` and a "right" factor
//! `w = a_{j+1} ⊗ ... ⊗ a_K`, so a flat basis index factors as
//! `(l·d_j + m)·R + r`. The reduced operator on block `j` is
//!
//! ```text
//! R[a, b] = Σ conj(u_l w_r) · L[(l, a, r), (l', b, r')] · u_l' w_r'
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::operator::HermitianOperator;
use super::product::{check_partition, kron_vectors, ProductVector};
use crate::error::{Error, Result};
use crate::partition::Partition;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_vector(l: &HermitianOperator, v: &ProductVector) -> Result<()> {
    let space = l.space();
    check_partition(space, v.partition())?;
    for (j, (block, f)) in v.partition().blocks().iter().zip(v.factors()).enumerate() {
        if space.block_dim(block) != f.len() {
            return Err(Error::PartitionMismatch(format!(
                "factor {} has length {}, block dimension is {}",
                j + 1,
                f.len(),
                space.block_dim(block)
            )));
        }
    }
    Ok(())
}

/// The operator `L_{a_1..a_{j-1}, a_{j+1}..a_K}` acting on block `skip`
/// (0-based). Requires a canonical partition; see [`canonicalize`].
pub fn reduce_operator(
    l: &HermitianOperator,
    v: &ProductVector,
    skip: usize,
) -> Result<DMatrix<Complex64>> {
    check_vector(l, v)?;
    let k = v.num_blocks();
    if skip >= k {
        return Err(Error::IndexOutOfRange {
            index: skip,
            blocks: k,
        });
    }
    if !v.partition().is_canonical() {
        return Err(Error::PartitionMismatch(format!(
            "partition {} is not in canonical order",
            v.partition()
        )));
    }
    let left = kron_vectors(v.factors()[..skip].iter().map(Vec::as_slice));
    let right = kron_vectors(v.factors()[skip + 1..].iter().map(Vec::as_slice));
    let mid = v.factor(skip).len();
    let (nl, nr) = (left.len(), right.len());
    let dim = l.dim();

    // half[row, b] = Σ_{l', r'} L[row, (l', b, r')] u_l' w_r'
    let mut half = vec![ZERO; dim * mid];
    for row in 0..dim {
        let lrow = l.row(row);
        let out = &mut half[row * mid..(row + 1) * mid];
        for (lp, ul) in left.iter().enumerate() {
            if *ul == ZERO {
                continue;
            }
            for (b, slot) in out.iter_mut().enumerate() {
                let base = (lp * mid + b) * nr;
                let s: Complex64 = lrow[base..base + nr]
                    .iter()
                    .zip(&right)
                    .map(|(x, w)| x * w)
                    .sum();
                *slot += ul * s;
            }
        }
    }

    let mut reduced = DMatrix::from_element(mid, mid, ZERO);
    for (li, ul) in left.iter().enumerate() {
        if *ul == ZERO {
            continue;
        }
        for a in 0..mid {
            for (ri, wr) in right.iter().enumerate() {
                let coeff = (ul * wr).conj();
                if coeff == ZERO {
                    continue;
                }
                let row = (li * mid + a) * nr + ri;
                for b in 0..mid {
                    reduced[(a, b)] += coeff * half[row * mid + b];
                }
            }
        }
    }
    debug_assert!(nl * mid * nr == dim);

    // exact Hermitian symmetrization of roundoff
    for a in 0..mid {
        for b in a..mid {
            let avg = (reduced[(a, b)] + reduced[(b, a)].conj()) * 0.5;
            reduced[(a, b)] = avg;
            reduced[(b, a)] = avg.conj();
        }
    }
    Ok(reduced)
}

/// `⟨a_1, ..., a_K| L |a_1, ..., a_K⟩`. Any partition is accepted.
pub fn expectation(l: &HermitianOperator, v: &ProductVector) -> Result<f64> {
    check_vector(l, v)?;
    let psi = v.to_dense(l.space())?;
    let z = l.sandwich(&psi)?;
    debug_assert!(
        z.im.abs() <= 1e-10 * l.max_abs_entry().max(1.0) * (l.dim() as f64).max(1.0),
        "imaginary part {} in a Hermitian expectation",
        z.im
    );
    Ok(z.re)
}

/// Relabeling of subsystems produced by [`canonicalize`]: canonical
/// subsystem `k` is original subsystem `order[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemPermutation {
    pub order: Vec<usize>,
}

impl SubsystemPermutation {
    pub fn is_identity(&self) -> bool {
        self.order.iter().enumerate().all(|(k, &i)| k == i)
    }

    /// `inverse[i]` is the canonical position of original subsystem `i`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.order.len()];
        for (k, &i) in self.order.iter().enumerate() {
            inv[i] = k;
        }
        inv
    }
}

#[derive(Debug, Clone)]
pub struct Canonical {
    pub operator: HermitianOperator,
    pub partition: Partition,
    pub permutation: SubsystemPermutation,
}

/// Permutes subsystems so that each block is a contiguous ascending run and
/// blocks appear in ascending order.
///
/// Blocks keep their index and internal subsystem order, so factor vectors
/// of product states carry over unchanged between the two labelings.
pub fn canonicalize(l: &HermitianOperator, p: &Partition) -> Result<Canonical> {
    if p.num_subsystems() != l.space().num_subsystems() {
        return Err(Error::InvalidPartition(format!(
            "partition over {} subsystems for an operator on {}",
            p.num_subsystems(),
            l.space().num_subsystems()
        )));
    }
    let order = p.canonical_order();
    let permutation = SubsystemPermutation { order };
    if permutation.is_identity() {
        return Ok(Canonical {
            operator: l.clone(),
            partition: p.clone(),
            permutation,
        });
    }
    let inv = permutation.inverse();
    let blocks = p
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&i| inv[i]).collect())
        .collect();
    let partition = Partition::new(blocks, p.num_subsystems())?;
    Ok(Canonical {
        operator: l.permute_subsystems(&permutation.order),
        partition,
        permutation,
    })
}
