//! Block-coordinate eigen-iteration for the multipartite separability
//! eigenvalue equations
//!
//! ```text
//! L_{a_1..a_{j-1}, a_{j+1}..a_K} |a_j⟩ = g |a_j⟩,   j = 1..K.
//! ```
//!
//! Each block update replaces `a_j` by an extremal eigenvector of its
//! reduced operator, which solves equation `j` exactly and moves `g`
//! monotonically in that block's direction. Fixed points of a sweep solve all
//! K equations simultaneously.

use std::cmp::Ordering;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    canonicalize, expectation, fix_phase, reduce_operator, HermitianOperator, ProductVector,
};
use crate::linalg::{hermitian_eigen, SortedEigen};
use crate::partition::Partition;
use crate::rng;

/// Eigenvalues this close (relative to the spectrum scale) to the extremal
/// one are treated as degenerate with it.
const DEGENERACY_TOL: f64 = 1e-13;
/// Below this overlap with the current factor a degenerate candidate is
/// considered unrelated to it.
const OVERLAP_FLOOR: f64 = 1e-6;
/// Overlaps this close count as tied; the lower index wins.
const OVERLAP_TIE: f64 = 1e-12;
/// Direction patterns are enumerated only up to this many blocks.
pub const MAX_ENUMERATION_BLOCKS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sup,
    Inf,
}

impl Mode {
    pub fn opposite(self) -> Mode {
        match self {
            Mode::Sup => Mode::Inf,
            Mode::Inf => Mode::Sup,
        }
    }

    /// How far `next` moved against this direction (0 when it did not).
    fn regression(self, prev: f64, next: f64) -> f64 {
        match self {
            Mode::Sup => (prev - next).max(0.0),
            Mode::Inf => (next - prev).max(0.0),
        }
    }

    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Mode::Sup => a > b,
            Mode::Inf => a < b,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup" => Ok(Mode::Sup),
            "inf" => Ok(Mode::Inf),
            other => Err(Error::InvalidArgument(format!(
                "mode must be \"sup\" or \"inf\", got {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Sup => "sup",
            Mode::Inf => "inf",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub mode: Mode,
    pub tol_g: f64,
    pub tol_residual: f64,
    pub max_iter: usize,
    pub n_starts: usize,
    pub seed: u64,
    pub dedup_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Sup,
            tol_g: 1e-10,
            tol_residual: 1e-8,
            max_iter: 500,
            n_starts: 64,
            seed: 0,
            dedup_tol: 1e-7,
        }
    }
}

impl SolverConfig {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_starts(mut self, n_starts: usize) -> Self {
        self.n_starts = n_starts;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("tol_g", self.tol_g),
            ("tol_residual", self.tol_residual),
            ("dedup_tol", self.dedup_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        if self.n_starts == 0 {
            return Err(Error::InvalidArgument("n_starts must be >= 1".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// An MSEvalue `g` with its MSEvector and convergence record.
#[derive(Debug, Clone, PartialEq)]
pub struct MseSolution {
    pub g: f64,
    pub vector: ProductVector,
    /// `max_j ‖L_j a_j − g a_j‖₂` at the returned vector.
    pub residual: f64,
    /// Completed sweeps over all blocks.
    pub iterations: usize,
    pub converged: bool,
    /// Update direction used for each block.
    pub directions: Vec<Mode>,
    /// `g` at the initial vector followed by `g` after every block update.
    pub trace: Vec<f64>,
}

impl MseSolution {
    /// `g` at the start and after each completed sweep.
    pub fn sweep_values(&self) -> Vec<f64> {
        let k = self.directions.len().max(1);
        self.trace.iter().step_by(k).copied().collect()
    }

    /// Largest step against the prescribed direction over all block updates.
    /// For uniform directions this bounds the violation of the per-sweep
    /// monotonicity as well.
    pub fn monotonicity_violation(&self) -> f64 {
        let k = self.directions.len().max(1);
        self.trace
            .windows(2)
            .enumerate()
            .map(|(i, w)| self.directions[i % k].regression(w[0], w[1]))
            .fold(0.0, f64::max)
    }
}

/// Deduplicated solutions of one multistart run, sorted by `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct MseSolutionSet {
    pub mode: Mode,
    pub partition: Partition,
    pub solutions: Vec<MseSolution>,
    /// Extremal `g` over converged solutions (max for sup, min for inf).
    pub f_value: f64,
}

impl MseSolutionSet {
    pub fn converged(&self) -> impl Iterator<Item = &MseSolution> {
        self.solutions.iter().filter(|s| s.converged)
    }

    /// Distinct converged MSEvalues, ascending, merged within `tol`.
    pub fn values(&self, tol: f64) -> Vec<f64> {
        distinct_values(&self.solutions, tol)
    }

    pub fn max_monotonicity_violation(&self) -> f64 {
        self.solutions
            .iter()
            .map(MseSolution::monotonicity_violation)
            .fold(0.0, f64::max)
    }
}

/// Distinct `g` of converged solutions, ascending, merged within `tol`.
pub fn distinct_values(solutions: &[MseSolution], tol: f64) -> Vec<f64> {
    let mut gs: Vec<f64> = solutions
        .iter()
        .filter(|s| s.converged)
        .map(|s| s.g)
        .collect();
    gs.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for g in gs {
        if out.last().is_none_or(|last| g - last > tol) {
            out.push(g);
        }
    }
    out
}

/// Picks the extremal eigenpair, breaking degeneracy by overlap with
/// `current` and then by lowest index in the sorted decomposition.
fn select_extremal(eig: &SortedEigen, current: &[Complex64], mode: Mode) -> (Vec<Complex64>, f64) {
    let n = eig.values.len();
    let extremal = match mode {
        Mode::Sup => eig.values[n - 1],
        Mode::Inf => eig.values[0],
    };
    let scale = eig.values[0].abs().max(eig.values[n - 1].abs()).max(1.0);
    let candidates: Vec<usize> = (0..n)
        .filter(|&k| (eig.values[k] - extremal).abs() <= DEGENERACY_TOL * scale)
        .collect();
    let column = |k: usize| -> Vec<Complex64> { eig.vectors.column(k).iter().copied().collect() };

    let mut pick = candidates[0];
    if candidates.len() > 1 {
        let mut best = -1.0;
        for &k in &candidates {
            let ov: f64 = eig
                .vectors
                .column(k)
                .iter()
                .zip(current)
                .map(|(e, a)| e.conj() * a)
                .sum::<Complex64>()
                .norm();
            if ov > best + OVERLAP_TIE {
                best = ov;
                pick = k;
            }
        }
        if best < OVERLAP_FLOOR {
            pick = candidates[0];
        }
    }
    let mut v = column(pick);
    let nv = crate::hilbert::norm(&v);
    v.iter_mut().for_each(|z| *z /= nv);
    fix_phase(&mut v);
    (v, eig.values[pick])
}

/// One block update: the extremal eigenpair of the reduced operator on block
/// `j` (0-based). Returns the new unit factor and its eigenvalue.
pub fn block_update(
    l: &HermitianOperator,
    v: &ProductVector,
    j: usize,
    mode: Mode,
) -> Result<(Vec<Complex64>, f64)> {
    let reduced = reduce_operator(l, v, j)?;
    let eig = hermitian_eigen(reduced)?;
    Ok(select_extremal(&eig, v.factor(j), mode))
}

fn residual_at(l: &HermitianOperator, v: &ProductVector, g: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for j in 0..v.num_blocks() {
        let r = reduce_operator(l, v, j)?;
        let a = v.factor(j);
        let mut sq = 0.0;
        for row in 0..a.len() {
            let mut s = -a[row] * g;
            for (col, x) in a.iter().enumerate() {
                s += r[(row, col)] * x;
            }
            sq += s.norm_sqr();
        }
        worst = worst.max(sq.sqrt());
    }
    Ok(worst)
}

/// `max_j ‖L_j a_j − g a_j‖₂` for a candidate solution.
pub fn residual(l: &HermitianOperator, partition: &Partition, sol: &MseSolution) -> Result<f64> {
    if sol.vector.partition() != partition {
        return Err(Error::PartitionMismatch(format!(
            "solution uses partition {}, expected {partition}",
            sol.vector.partition()
        )));
    }
    residual_at(l, &sol.vector, sol.g)
}

/// Cyclic block-coordinate iteration in the uniform direction `cfg.mode`.
pub fn iterate(
    l: &HermitianOperator,
    partition: &Partition,
    init: &ProductVector,
    cfg: &SolverConfig,
) -> Result<MseSolution> {
    if init.partition() != partition {
        return Err(Error::PartitionMismatch(format!(
            "initial vector uses partition {}, expected {partition}",
            init.partition()
        )));
    }
    iterate_directed(l, init, &vec![cfg.mode; partition.num_blocks()], cfg)
}

/// Cyclic block-coordinate iteration with a per-block direction.
///
/// Mixed directions reach saddle-type solutions (e.g. `α_max·β_min` for a
/// product operator) that uniform sup or inf iteration never settles on.
/// Each single update still moves `g` monotonically in its block's direction.
pub fn iterate_directed(
    l: &HermitianOperator,
    init: &ProductVector,
    directions: &[Mode],
    cfg: &SolverConfig,
) -> Result<MseSolution> {
    cfg.validate()?;
    let k = init.num_blocks();
    if directions.len() != k {
        return Err(Error::InvalidArgument(format!(
            "{} directions for {k} blocks",
            directions.len()
        )));
    }
    if !init.partition().is_canonical() {
        return Err(Error::PartitionMismatch(format!(
            "partition {} is not in canonical order",
            init.partition()
        )));
    }
    let mut v = init.clone();
    let mut g = expectation(l, &v)?;
    let mut trace = Vec::with_capacity(1 + k * 8);
    trace.push(g);
    let mut iterations = 0;
    let mut converged = false;
    let mut res = f64::INFINITY;

    while iterations < cfg.max_iter {
        let g_prev = g;
        for (j, &dir) in directions.iter().enumerate() {
            let (factor, value) = block_update(l, &v, j, dir)?;
            v.set_factor(j, factor);
            g = value;
            trace.push(g);
        }
        iterations += 1;
        if (g - g_prev).abs() <= cfg.tol_g {
            res = residual_at(l, &v, g)?;
            if res <= cfg.tol_residual {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        res = residual_at(l, &v, g)?;
    }
    Ok(MseSolution {
        g,
        vector: v,
        residual: res,
        iterations,
        converged,
        directions: directions.to_vec(),
        trace,
    })
}

fn cmp_solutions(a: &MseSolution, b: &MseSolution) -> Ordering {
    a.g.total_cmp(&b.g).then_with(|| {
        let fa = a.vector.factors().iter().flatten();
        let fb = b.vector.factors().iter().flatten();
        for (x, y) in fa.zip(fb) {
            let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

fn is_duplicate(a: &MseSolution, b: &MseSolution, tol: f64) -> bool {
    (a.g - b.g).abs() <= tol
        && a.vector
            .factor_overlaps(&b.vector)
            .iter()
            .all(|&o| o >= 1.0 - tol)
}

/// Sorts by `(g, factor data)` and drops duplicates, preferring converged
/// representatives. Output is independent of the input order.
fn dedup(mut sols: Vec<MseSolution>, tol: f64) -> Vec<MseSolution> {
    sols.sort_by(cmp_solutions);
    let mut kept: Vec<MseSolution> = Vec::with_capacity(sols.len());
    'next: for s in sols {
        for k in kept.iter_mut().rev() {
            if s.g - k.g > tol {
                break;
            }
            if is_duplicate(k, &s, tol) {
                if s.converged && !k.converged {
                    *k = s;
                }
                continue 'next;
            }
        }
        kept.push(s);
    }
    kept
}

fn run_starts(
    l: &HermitianOperator,
    partition: &Partition,
    cfg: &SolverConfig,
    directions: &[Mode],
    sample_offset: u64,
) -> Result<Vec<MseSolution>> {
    (0..cfg.n_starts as u64)
        .into_par_iter()
        .map(|k| {
            let init = rng::haar_product(l.space(), partition, cfg.seed, sample_offset + k)?;
            iterate_directed(l, &init, directions, cfg)
        })
        .collect()
}

/// Every run of [`multistart`] before deduplication, in start order.
/// Non-canonical partitions are handled by permuting subsystems
/// internally; returned vectors use `partition`.
pub fn multistart_runs(
    l: &HermitianOperator,
    partition: &Partition,
    cfg: &SolverConfig,
) -> Result<Vec<MseSolution>> {
    cfg.validate()?;
    let canon = canonicalize(l, partition)?;
    let directions = vec![cfg.mode; partition.num_blocks()];
    let raw = run_starts(&canon.operator, &canon.partition, cfg, &directions, 0)?;
    Ok(relabel(raw, partition))
}

/// Deduplicates `runs` and extracts the extremal converged `g`.
pub fn summarize(
    mode: Mode,
    partition: &Partition,
    runs: Vec<MseSolution>,
    dedup_tol: f64,
) -> Result<MseSolutionSet> {
    let solutions = dedup(runs, dedup_tol);
    let f_value = solutions
        .iter()
        .filter(|s| s.converged)
        .map(|s| s.g)
        .reduce(|a, b| if mode.better(b, a) { b } else { a })
        .ok_or(Error::NoConvergedSolution)?;
    Ok(MseSolutionSet {
        mode,
        partition: partition.clone(),
        solutions,
        f_value,
    })
}

/// Runs [`iterate`] from `cfg.n_starts` seeded Haar-random product vectors
/// (start `k` draws block `j` from [`rng::stream`]`(seed, k, j)`) and
/// deduplicates the results.
pub fn multistart(
    l: &HermitianOperator,
    partition: &Partition,
    cfg: &SolverConfig,
) -> Result<MseSolutionSet> {
    let runs = multistart_runs(l, partition, cfg)?;
    summarize(cfg.mode, partition, runs, cfg.dedup_tol)
}

fn relabel(sols: Vec<MseSolution>, partition: &Partition) -> Vec<MseSolution> {
    sols.into_iter()
        .map(|mut s| {
            s.vector = s.vector.with_partition(partition.clone());
            s
        })
        .collect()
}

/// `f_{I_1:…:I_K}(L)`: the largest (sup) or smallest (inf) MSEvalue found by
/// [`multistart`]. A heuristic bound; multistart may miss solutions.
pub fn f_bound(l: &HermitianOperator, partition: &Partition, cfg: &SolverConfig) -> Result<f64> {
    multistart(l, partition, cfg).map(|s| s.f_value)
}

/// Every run of [`enumerate`] before deduplication: `cfg.n_starts` starts
/// for each per-block direction pattern in `{sup, inf}^K` (`cfg.mode` is
/// ignored). Pattern `m` sets block `j` to inf iff bit `j` of `m` is set and
/// uses start samples `m·n_starts ..`.
pub fn enumerate_runs(
    l: &HermitianOperator,
    partition: &Partition,
    cfg: &SolverConfig,
) -> Result<Vec<MseSolution>> {
    cfg.validate()?;
    let k = partition.num_blocks();
    if k > MAX_ENUMERATION_BLOCKS {
        return Err(Error::InvalidArgument(format!(
            "direction enumeration supports at most {MAX_ENUMERATION_BLOCKS} blocks, got {k}"
        )));
    }
    let canon = canonicalize(l, partition)?;
    let mut all = Vec::new();
    for pattern in 0..(1u64 << k) {
        let directions: Vec<Mode> = (0..k)
            .map(|j| {
                if pattern >> j & 1 == 0 {
                    Mode::Sup
                } else {
                    Mode::Inf
                }
            })
            .collect();
        let offset = pattern * cfg.n_starts as u64;
        all.extend(run_starts(
            &canon.operator,
            &canon.partition,
            cfg,
            &directions,
            offset,
        )?);
    }
    Ok(relabel(all, partition))
}

/// Deduplicated MSE solutions from every per-block direction pattern.
///
/// Uniform sup or inf iteration only settles on solutions where every
/// factor is a top (resp. bottom) eigenvector of its reduced operator.
/// Mixing directions also reaches the saddle-type ones; when every block is
/// a qubit, each eigenvector of a reduced operator is either its top or its
/// bottom one, so every MSE solution is a fixed point of some pattern.
pub fn enumerate(
    l: &HermitianOperator,
    partition: &Partition,
    cfg: &SolverConfig,
) -> Result<Vec<MseSolution>> {
    let sols = dedup(enumerate_runs(l, partition, cfg)?, cfg.dedup_tol);
    if !sols.iter().any(|s| s.converged) {
        return Err(Error::NoConvergedSolution);
    }
    Ok(sols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{tensor_product, CompositeSpace};
    use crate::{pauli, states};

    fn basis(space: &CompositeSpace, n: usize, idx: &[usize]) -> ProductVector {
        ProductVector::basis(space, Partition::finest(n).unwrap(), idx).unwrap()
    }

    #[test]
    fn block_update_diagonal() {
        let l = tensor_product(&[pauli::z(), pauli::z()]).unwrap();
        let v = basis(l.space(), 2, &[1, 0]);
        let (f, g) = block_update(&l, &v, 0, Mode::Sup).unwrap();
        assert_eq!(g, 1.0);
        assert!((f[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(f[1].norm() < 1e-15);
    }

    #[test]
    fn block_update_identity_tie_break() {
        let space = CompositeSpace::qubits(2).unwrap();
        let l = HermitianOperator::identity(space.clone());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for first in [
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        ] {
            let v = ProductVector::new(
                &space,
                Partition::finest(2).unwrap(),
                vec![
                    first,
                    vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                ],
            )
            .unwrap();
            let (f, g) = block_update(&l, &v, 0, Mode::Sup).unwrap();
            assert!((g - 1.0).abs() < 1e-15);
            assert!((f[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15, "{f:?}");
        }
    }

    #[test]
    fn block_update_keeps_overlapping_degenerate_vector() {
        let space = CompositeSpace::qubits(2).unwrap();
        let l = HermitianOperator::identity(space.clone());
        let v = basis(&space, 2, &[1, 0]);
        let (f, _) = block_update(&l, &v, 0, Mode::Inf).unwrap();
        assert!((f[1] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn block_update_ghz() {
        let l = states::ghz(3, 2).unwrap().projector();
        let v = basis(l.space(), 3, &[1, 0, 0]);
        let (f, g) = block_update(&l, &v, 0, Mode::Sup).unwrap();
        assert!((g - 0.5).abs() < 1e-14);
        assert!((f[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn iterate_ghz_fixed_point() {
        let l = states::ghz(3, 2).unwrap().projector();
        let p = Partition::finest(3).unwrap();
        let init = basis(l.space(), 3, &[0, 0, 0]);
        let sol = iterate(&l, &p, &init, &SolverConfig::default()).unwrap();
        assert!(sol.converged);
        assert_eq!(sol.iterations, 1);
        assert!((sol.g - 0.5).abs() < 1e-14);
        assert_eq!(sol.vector, init);
    }

    #[test]
    fn iterate_identity() {
        let space = CompositeSpace::new(vec![2, 3]).unwrap();
        let l = HermitianOperator::identity(space.clone());
        let p = Partition::finest(2).unwrap();
        let init = rng::haar_product(&space, &p, 9, 0).unwrap();
        let sol = iterate(&l, &p, &init, &SolverConfig::default()).unwrap();
        assert!(sol.converged);
        assert!((sol.g - 1.0).abs() < 1e-14);
        assert!(sol.residual < 1e-14);
    }

    #[test]
    fn iterate_product_operator() {
        let a = HermitianOperator::diagonal(CompositeSpace::new(vec![2]).unwrap(), &[3.0, 1.0])
            .unwrap();
        let b = HermitianOperator::diagonal(CompositeSpace::new(vec![2]).unwrap(), &[2.0, 1.0])
            .unwrap();
        let l = tensor_product(&[a, b]).unwrap();
        let p = Partition::finest(2).unwrap();
        let init = basis(l.space(), 2, &[1, 1]);
        let sol = iterate(&l, &p, &init, &SolverConfig::default()).unwrap();
        assert!(sol.converged);
        assert!(sol.iterations <= 2);
        assert!((sol.g - 6.0).abs() < 1e-14);
        assert_eq!(sol.vector, basis(l.space(), 2, &[0, 0]));
        assert_eq!(sol.sweep_values(), vec![1.0, 6.0, 6.0]);
    }

    #[test]
    fn iterate_rejects_wrong_partition() {
        let l = states::ghz(3, 2).unwrap().projector();
        let init = basis(l.space(), 3, &[0, 0, 0]);
        let other = Partition::parse("1,2:3", 3).unwrap();
        assert!(matches!(
            iterate(&l, &other, &init, &SolverConfig::default()),
            Err(Error::PartitionMismatch(_))
        ));
    }

    #[test]
    fn residual_examples() {
        let l = states::ghz(3, 2).unwrap().projector();
        let p = Partition::finest(3).unwrap();
        let exact = MseSolution {
            g: 0.5,
            vector: basis(l.space(), 3, &[0, 0, 0]),
            residual: 0.0,
            iterations: 0,
            converged: true,
            directions: vec![Mode::Sup; 3],
            trace: vec![],
        };
        assert!(residual(&l, &p, &exact).unwrap() <= 1e-12);

        let tilted = ProductVector::new(
            l.space(),
            p.clone(),
            vec![
                vec![Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0)],
                vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            ],
        )
        .unwrap();
        let perturbed = MseSolution {
            vector: tilted,
            ..exact.clone()
        };
        assert!(residual(&l, &p, &perturbed).unwrap() > 1e-3);

        let id = HermitianOperator::identity(l.space().clone());
        let any = MseSolution {
            g: 1.0,
            vector: rng::haar_product(l.space(), &p, 4, 0).unwrap(),
            ..exact
        };
        assert!(residual(&id, &p, &any).unwrap() < 1e-14);
    }

    #[test]
    fn multistart_sigma_zz() {
        let l = tensor_product(&[pauli::z(), pauli::z()]).unwrap();
        let p = Partition::finest(2).unwrap();
        let cfg = SolverConfig::default();
        let sup = multistart(&l, &p, &cfg).unwrap();
        assert!((sup.f_value - 1.0).abs() < 1e-12);
        let inf = multistart(&l, &p, &cfg.clone().with_mode(Mode::Inf)).unwrap();
        assert!((inf.f_value + 1.0).abs() < 1e-12);
        let mut all = sup.values(1e-9);
        all.extend(inf.values(1e-9));
        assert!(all.iter().any(|g| (g - 1.0).abs() < 1e-12));
        assert!(all.iter().any(|g| (g + 1.0).abs() < 1e-12));
    }

    #[test]
    fn multistart_ghz_inf_is_zero() {
        let l = states::ghz(3, 2).unwrap().projector();
        let p = Partition::finest(3).unwrap();
        let set = multistart(&l, &p, &SolverConfig::default().with_mode(Mode::Inf)).unwrap();
        assert!(set.f_value.abs() < 1e-12);
    }

    #[test]
    fn f_bound_identity_any_partition() {
        let l = HermitianOperator::identity(CompositeSpace::qubits(3).unwrap());
        for text in ["1:2:3", "1,3:2", "1,2,3"] {
            let p = Partition::parse(text, 3).unwrap();
            let f = f_bound(&l, &p, &SolverConfig::default()).unwrap();
            assert!((f - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dedup_is_order_independent() {
        let l = rng::random_hermitian(&CompositeSpace::qubits(2).unwrap(), 5);
        let p = Partition::finest(2).unwrap();
        let cfg = SolverConfig::default().with_starts(16);
        let raw = run_starts(&l, &p, &cfg, &[Mode::Sup, Mode::Sup], 0).unwrap();
        let mut rev = raw.clone();
        rev.reverse();
        assert_eq!(dedup(raw, cfg.dedup_tol), dedup(rev, cfg.dedup_tol));
    }

    #[test]
    fn config_validation() {
        let bad = SolverConfig {
            n_starts: 0,
            ..SolverConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolverConfig {
            tol_g: 0.0,
            ..SolverConfig::default()
        };
        assert!(bad.validate().is_err());
        let json = r#"{"mode":"inf","n_starts":3}"#;
        let cfg: SolverConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.mode, Mode::Inf);
        assert_eq!(cfg.n_starts, 3);
        assert_eq!(cfg.max_iter, 500);
        assert!(serde_json::from_str::<SolverConfig>(r#"{"bogus":1}"#).is_err());
    }
}
