use crate::error::{Error, Result};

/// Per-subsystem dimensions of `H_1 ⊗ ... ⊗ H_N`. Subsystem 1 is the slowest
/// index of the flattened basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositeSpace {
    dims: Vec<usize>,
    total: usize,
}

impl CompositeSpace {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument(
                "space needs at least one subsystem".into(),
            ));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidArgument(format!(
                "subsystem dimension {d} < 2"
            )));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidArgument("total dimension overflows".into()))?;
        Ok(Self { dims, total })
    }

    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    /// Dimension of the tensor factor spanned by `subsystems`.
    pub fn block_dim(&self, subsystems: &[usize]) -> usize {
        subsystems.iter().map(|&i| self.dims[i]).product()
    }

    pub fn concat(&self, other: &CompositeSpace) -> CompositeSpace {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        CompositeSpace {
            dims,
            total: self.total * other.total,
        }
    }

    /// Space whose k-th subsystem is subsystem `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> CompositeSpace {
        CompositeSpace {
            dims: order.iter().map(|&i| self.dims[i]).collect(),
            total: self.total,
        }
    }

    /// Mixed-radix digits of a flat basis index.
    pub fn digits(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }

    pub fn flat_index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&x, &d)| acc * d + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_dims() {
        assert!(CompositeSpace::new(vec![2, 1]).is_err());
        assert!(CompositeSpace::new(vec![]).is_err());
    }

    #[test]
    fn digits_round_trip() {
        let s = CompositeSpace::new(vec![2, 3, 2]).unwrap();
        assert_eq!(s.total_dim(), 12);
        for flat in 0..12 {
            assert_eq!(s.flat_index(&s.digits(flat)), flat);
        }
        assert_eq!(s.digits(5), vec![0, 2, 1]);
    }
}
