//! Single-qubit operators used throughout tests and examples.

use num_complex::Complex64;

use crate::hilbert::{CompositeSpace, HermitianOperator};

fn qubit(entries: [Complex64; 4]) -> HermitianOperator {
    HermitianOperator::new(CompositeSpace::new(vec![2]).unwrap(), entries.to_vec())
        .expect("Pauli matrices are Hermitian")
}

const O: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity() -> HermitianOperator {
    qubit([ONE, O, O, ONE])
}

pub fn x() -> HermitianOperator {
    qubit([O, ONE, ONE, O])
}

pub fn y() -> HermitianOperator {
    qubit([O, -I, I, O])
}

pub fn z() -> HermitianOperator {
    qubit([ONE, O, O, -ONE])
}
