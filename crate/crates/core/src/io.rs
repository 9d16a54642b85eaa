//! JSON interchange formats.
//!
//! Operators and density matrices: `{"dims": [..], "re": [[..]], "im": [[..]]}`
//! (row-major). State vectors: `{"dims": [..], "re": [..], "im": [..]}`.
//! A missing `"im"` reads as all zeros; writers always emit it.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{CompositeSpace, DensityMatrix, HermitianOperator, ProductVector};
use crate::partition::Partition;
use crate::solver::{Mode, MseSolution, MseSolutionSet};
use crate::states::PureState;
use crate::witness::Witness;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub dims: Vec<usize>,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

/// A state file holds either a vector or a density matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateJson {
    Pure(VectorJson),
    Mixed(MatrixJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub g: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub factors: Vec<FactorJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSetJson {
    pub mode: Mode,
    pub partition: String,
    pub f_value: f64,
    pub solutions: Vec<SolutionJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub operator: MatrixJson,
    pub partition: String,
    pub f_sup: f64,
    pub solver_report: SolutionSetJson,
}

/// Maps `-0.0` to `0.0` so equal values always print the same way.
fn unsigned_zero(x: f64) -> f64 {
    x + 0.0
}

fn split(v: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    (
        v.iter().map(|z| unsigned_zero(z.re)).collect(),
        v.iter().map(|z| unsigned_zero(z.im)).collect(),
    )
}

fn join(re: &[f64], im: &[f64]) -> Result<Vec<Complex64>> {
    if !im.is_empty() && im.len() != re.len() {
        return Err(Error::Format(format!(
            "\"re\" has {} entries, \"im\" has {}",
            re.len(),
            im.len()
        )));
    }
    Ok(re
        .iter()
        .enumerate()
        .map(|(k, &r)| Complex64::new(r, im.get(k).copied().unwrap_or(0.0)))
        .collect())
}

fn matrix_entries(m: &MatrixJson) -> Result<(CompositeSpace, Vec<Complex64>)> {
    let space = CompositeSpace::new(m.dims.clone())?;
    let dim = space.total_dim();
    if m.re.len() != dim || (!m.im.is_empty() && m.im.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, dims {:?} need {dim}",
            m.re.len(),
            m.dims
        )));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (r, row) in m.re.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "row {r} has {} entries, expected {dim}",
                row.len()
            )));
        }
        let im = m.im.get(r).map(Vec::as_slice).unwrap_or(&[]);
        entries.extend(join(row, im)?);
    }
    Ok((space, entries))
}

fn matrix_json(space: &CompositeSpace, data: &[Complex64]) -> MatrixJson {
    let dim = space.total_dim();
    let (re, im) = data.chunks(dim).map(split).unzip();
    MatrixJson {
        dims: space.dims().to_vec(),
        re,
        im,
    }
}

pub fn operator_from_json(m: &MatrixJson) -> Result<HermitianOperator> {
    let (space, entries) = matrix_entries(m)?;
    HermitianOperator::new(space, entries)
}

pub fn operator_to_json(op: &HermitianOperator) -> MatrixJson {
    matrix_json(op.space(), op.as_slice())
}

pub fn density_from_json(m: &MatrixJson) -> Result<DensityMatrix> {
    let (space, entries) = matrix_entries(m)?;
    DensityMatrix::new(space, entries)
}

pub fn density_to_json(rho: &DensityMatrix) -> MatrixJson {
    matrix_json(rho.space(), rho.as_slice())
}

pub fn pure_from_json(v: &VectorJson) -> Result<PureState> {
    let space = CompositeSpace::new(v.dims.clone())?;
    PureState::new(space, join(&v.re, &v.im)?)
}

pub fn pure_to_json(psi: &PureState) -> VectorJson {
    let (re, im) = split(psi.amplitudes());
    VectorJson {
        dims: psi.space().dims().to_vec(),
        re,
        im,
    }
}

pub fn state_from_json(s: &StateJson) -> Result<DensityMatrix> {
    match s {
        StateJson::Pure(v) => Ok(pure_from_json(v)?.density()),
        StateJson::Mixed(m) => density_from_json(m),
    }
}

pub fn solution_to_json(s: &MseSolution) -> SolutionJson {
    SolutionJson {
        g: unsigned_zero(s.g),
        residual: s.residual,
        iterations: s.iterations,
        converged: s.converged,
        factors: s
            .vector
            .factors()
            .iter()
            .map(|f| {
                let (re, im) = split(f);
                FactorJson { re, im }
            })
            .collect(),
    }
}

pub fn solution_set_to_json(set: &MseSolutionSet) -> SolutionSetJson {
    SolutionSetJson {
        mode: set.mode,
        partition: set.partition.to_string(),
        f_value: unsigned_zero(set.f_value),
        solutions: set.solutions.iter().map(solution_to_json).collect(),
    }
}

/// Rebuilds a solution set; iteration traces are not part of the format and
/// come back empty.
pub fn solution_set_from_json(
    space: &CompositeSpace,
    j: &SolutionSetJson,
) -> Result<MseSolutionSet> {
    let partition = Partition::parse(&j.partition, space.num_subsystems())?;
    let solutions = j
        .solutions
        .iter()
        .map(|s| {
            let factors = s
                .factors
                .iter()
                .map(|f| join(&f.re, &f.im))
                .collect::<Result<Vec<_>>>()?;
            Ok(MseSolution {
                g: s.g,
                vector: ProductVector::new(space, partition.clone(), factors)?,
                residual: s.residual,
                iterations: s.iterations,
                converged: s.converged,
                directions: vec![j.mode; partition.num_blocks()],
                trace: Vec::new(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MseSolutionSet {
        mode: j.mode,
        partition,
        solutions,
        f_value: j.f_value,
    })
}

pub fn witness_to_json(w: &Witness) -> WitnessJson {
    WitnessJson {
        operator: operator_to_json(&w.operator),
        partition: w.partition.to_string(),
        f_sup: unsigned_zero(w.f_sup),
        solver_report: solution_set_to_json(&w.solver_report),
    }
}

pub fn witness_from_json(j: &WitnessJson) -> Result<Witness> {
    let operator = operator_from_json(&j.operator)?;
    let partition = Partition::parse(&j.partition, operator.space().num_subsystems())?;
    let report = solution_set_from_json(operator.space(), &j.solver_report)?;
    Witness::from_parts(operator, partition, j.f_sup, report)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn read_operator(path: &Path) -> Result<HermitianOperator> {
    operator_from_json(&read_json(path)?)
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    state_from_json(&read_json(path)?)
}

pub fn read_pure(path: &Path) -> Result<PureState> {
    pure_from_json(&read_json(path)?)
}

pub fn read_witness(path: &Path) -> Result<Witness> {
    witness_from_json(&read_json(path)?)
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data always serializes")
}
