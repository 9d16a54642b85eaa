//! Independent optimizers over product states used to certify `f` bounds at
//! small dimensions.
//!
//! Neither routine touches the reduced-operator contraction or the
//! eigensolver used by [`crate::solver`]: the brute-force search only ever
//! evaluates `⟨ψ|L|ψ⟩` on explicit product vectors, and the qubit grid uses
//! its own nested contraction with a closed-form 2×2 extremum.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::HermitianOperator;
use crate::partition::Partition;
use crate::rng;
use crate::solver::Mode;

/// Largest total dimension the brute-force oracle accepts.
pub const MAX_ORACLE_DIM: usize = 256;
/// Largest number of grid points (over all but the last qubit) the grid
/// oracle evaluates.
pub const MAX_GRID_POINTS: usize = 50_000_000;

const STEP_FLOOR: f64 = 1e-9;
const MIN_GAIN: f64 = 1e-12;
const MAX_PASSES: usize = 20_000;

fn sign(mode: Mode) -> f64 {
    match mode {
        Mode::Sup => 1.0,
        Mode::Inf => -1.0,
    }
}

/// Evaluates `⟨a_1..a_K|L|a_1..a_K⟩` through an explicit dense product
/// vector for any (not necessarily canonical) partition.
struct ProductEvaluator<'a> {
    l: &'a HermitianOperator,
    /// For each flat index, the local index inside every block.
    local: Vec<Vec<usize>>,
}

impl<'a> ProductEvaluator<'a> {
    fn new(l: &'a HermitianOperator, partition: &Partition) -> Self {
        let space = l.space();
        let dims = space.dims();
        let owner = partition.block_of();
        let local = (0..space.total_dim())
            .map(|flat| {
                let mut idx = vec![0usize; partition.num_blocks()];
                for (i, d) in space.digits(flat).into_iter().enumerate() {
                    idx[owner[i]] = idx[owner[i]] * dims[i] + d;
                }
                idx
            })
            .collect();
        Self { l, local }
    }

    fn value(&self, factors: &[Vec<Complex64>]) -> f64 {
        let psi: Vec<Complex64> = self
            .local
            .iter()
            .map(|idx| idx.iter().zip(factors).map(|(&k, f)| f[k]).product())
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, a) in psi.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let s: Complex64 = self.l.row(r).iter().zip(&psi).map(|(x, b)| x * b).sum();
            acc += a.conj() * s;
        }
        acc.re
    }
}

#[derive(Clone, Copy)]
enum Move {
    /// Real rotation in the (p, q) plane.
    Rotate(usize, usize),
    /// Complex rotation `exp(i t (|p⟩⟨q| + |q⟩⟨p|))`.
    Twist(usize, usize),
    /// Phase on a single component.
    Phase(usize),
}

fn moves(dim: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for p in 0..dim {
        for q in p + 1..dim {
            out.push(Move::Rotate(p, q));
            out.push(Move::Twist(p, q));
        }
        out.push(Move::Phase(p));
    }
    out
}

fn apply(v: &mut [Complex64], mv: Move, t: f64) {
    let (c, s) = (t.cos(), t.sin());
    match mv {
        Move::Rotate(p, q) => {
            let (a, b) = (v[p], v[q]);
            v[p] = a * c - b * s;
            v[q] = a * s + b * c;
        }
        Move::Twist(p, q) => {
            let i = Complex64::new(0.0, 1.0);
            let (a, b) = (v[p], v[q]);
            v[p] = a * c + i * b * s;
            v[q] = i * a * s + b * c;
        }
        Move::Phase(p) => v[p] *= Complex64::from_polar(1.0, t),
    }
}

/// Greedy pattern search over small unitary moves on each factor; the step
/// halves whenever a full pass gains less than `MIN_GAIN`.
fn polish(eval: &ProductEvaluator, mut factors: Vec<Vec<Complex64>>, s: f64) -> f64 {
    let move_sets: Vec<Vec<Move>> = factors.iter().map(|f| moves(f.len())).collect();
    let mut best = s * eval.value(&factors);
    let mut step = 0.25;
    let mut passes = 0;
    while step > STEP_FLOOR && passes < MAX_PASSES {
        passes += 1;
        let start = best;
        for j in 0..factors.len() {
            for &mv in &move_sets[j] {
                for t in [step, -step] {
                    let saved = factors[j].clone();
                    apply(&mut factors[j], mv, t);
                    let val = s * eval.value(&factors);
                    if val > best {
                        best = val;
                    } else {
                        factors[j] = saved;
                    }
                }
            }
        }
        if best - start < MIN_GAIN {
            step *= 0.5;
        }
    }
    best
}

/// Extremal `⟨a_1..a_K|L|a_1..a_K⟩` by Haar sampling followed by local
/// polishing of the best `n_polish` samples.
pub fn brute_force_extremum(
    l: &HermitianOperator,
    partition: &Partition,
    mode: Mode,
    n_samples: usize,
    n_polish: usize,
    seed: u64,
) -> Result<f64> {
    let space = l.space();
    if space.total_dim() > MAX_ORACLE_DIM {
        return Err(Error::DimensionGuard(format!(
            "total dimension {} exceeds {MAX_ORACLE_DIM}",
            space.total_dim()
        )));
    }
    if partition.num_subsystems() != space.num_subsystems() {
        return Err(Error::PartitionMismatch(format!(
            "partition {partition} for {} subsystems",
            space.num_subsystems()
        )));
    }
    if n_samples == 0 || n_polish == 0 {
        return Err(Error::InvalidArgument(
            "n_samples and n_polish must be >= 1".into(),
        ));
    }
    let s = sign(mode);
    let eval = ProductEvaluator::new(l, partition);
    let draw = |k: u64| -> Vec<Vec<Complex64>> {
        partition
            .blocks()
            .iter()
            .enumerate()
            .map(|(j, b)| rng::haar_vector(&mut rng::stream(seed, k, j as u64), space.block_dim(b)))
            .collect()
    };
    let mut scored: Vec<(f64, u64)> = (0..n_samples as u64)
        .into_par_iter()
        .map(|k| (s * eval.value(&draw(k)), k))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let best = scored
        .iter()
        .take(n_polish)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|&(_, k)| polish(&eval, draw(k), s))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(s * best)
}

fn bloch(theta: f64, phi: f64) -> [Complex64; 2] {
    [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]
}

/// Contracts the leading qubit of a `2^m × 2^m` row-major matrix with `x`.
fn contract_first(m: &[Complex64], dim: usize, x: &[Complex64; 2], out: &mut Vec<Complex64>) {
    let half = dim / 2;
    out.clear();
    out.resize(half * half, Complex64::new(0.0, 0.0));
    for i in 0..2 {
        for k in 0..2 {
            let c = x[i].conj() * x[k];
            for r in 0..half {
                let src =
                    &m[(i * half + r) * dim + k * half..(i * half + r) * dim + k * half + half];
                let dst = &mut out[r * half..(r + 1) * half];
                for (d, v) in dst.iter_mut().zip(src) {
                    *d += c * v;
                }
            }
        }
    }
}

/// Closed-form extremum of `s⟨n|R|n⟩` over the Bloch sphere for a 2×2
/// Hermitian `R`: `s·tr(R)/2 + |r|`, attained at the Bloch vector `s·r/|r|`.
fn qubit_extremum(r: &[Complex64], s: f64) -> (f64, f64, f64) {
    let t = (r[0].re + r[3].re) / 2.0;
    let (rx, ry, rz) = (r[1].re, -r[1].im, (r[0].re - r[3].re) / 2.0);
    let len = (rx * rx + ry * ry + rz * rz).sqrt();
    let value = s * t + len;
    if len == 0.0 {
        return (value, 0.0, 0.0);
    }
    let (nx, ny, nz) = (s * rx / len, s * ry / len, s * rz / len);
    (value, nz.clamp(-1.0, 1.0).acos(), ny.atan2(nx))
}

/// Extremal expectation over product states of an all-qubit operator with
/// the finest partition: exhaustive Bloch-angle grid over all but the last
/// qubit, the last qubit optimized in closed form, then one local polish of
/// all angles from the best grid point.
pub fn grid_qubit_extremum(
    l: &HermitianOperator,
    partition: &Partition,
    mode: Mode,
    grid_steps: usize,
) -> Result<f64> {
    let space = l.space();
    if space.dims().iter().any(|&d| d != 2) {
        return Err(Error::UnsupportedSpace(format!(
            "grid oracle needs qubits, got dims {:?}",
            space.dims()
        )));
    }
    let n = space.num_subsystems();
    if partition.num_subsystems() != n || partition.num_blocks() != n {
        return Err(Error::UnsupportedSpace(format!(
            "grid oracle needs the finest partition, got {partition}"
        )));
    }
    if grid_steps < 24 {
        return Err(Error::InvalidArgument(format!(
            "grid_steps must be >= 24, got {grid_steps}"
        )));
    }
    let per_qubit = grid_steps * grid_steps;
    let total = (0..n - 1).try_fold(1usize, |acc, _| acc.checked_mul(per_qubit));
    if total.is_none_or(|t| t > MAX_GRID_POINTS) {
        return Err(Error::DimensionGuard(format!(
            "{n} qubits at {grid_steps} steps exceeds {MAX_GRID_POINTS} grid points"
        )));
    }
    let s = sign(mode);
    let thetas: Vec<f64> = (0..grid_steps)
        .map(|a| PI * a as f64 / (grid_steps - 1) as f64)
        .collect();
    let phis: Vec<f64> = (0..grid_steps)
        .map(|b| 2.0 * PI * b as f64 / grid_steps as f64)
        .collect();
    let points: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
        .collect();

    // parallel over the first qubit's grid points; deterministic reduction
    // by (value, point index)
    let search = |first: usize| -> (f64, Vec<(f64, f64)>) {
        let mut best = (f64::NEG_INFINITY, Vec::new());
        let mut angles = vec![(0.0, 0.0); n];
        let mut scratch: Vec<Vec<Complex64>> = vec![Vec::new(); n];
        descend(
            l.as_slice(),
            l.dim(),
            0,
            Some(first),
            &points,
            s,
            &mut angles,
            &mut scratch,
            &mut best,
        );
        best
    };
    let best = if n == 1 {
        let (v, t, p) = qubit_extremum(l.as_slice(), s);
        (v, vec![(t, p)])
    } else {
        (0..points.len())
            .into_par_iter()
            .map(search)
            .collect::<Vec<_>>()
            .into_iter()
            .fold((f64::NEG_INFINITY, Vec::new()), |acc, cand| {
                if cand.0 > acc.0 {
                    cand
                } else {
                    acc
                }
            })
    };

    let eval = ProductEvaluator::new(l, partition);
    let value_at = |angles: &[(f64, f64)]| -> f64 {
        let factors: Vec<Vec<Complex64>> =
            angles.iter().map(|&(t, p)| bloch(t, p).to_vec()).collect();
        s * eval.value(&factors)
    };
    let mut angles = best.1;
    let mut current = value_at(&angles);
    let mut step = PI / (grid_steps - 1) as f64;
    let mut passes = 0;
    while step > STEP_FLOOR && passes < MAX_PASSES {
        passes += 1;
        let start = current;
        for q in 0..n {
            for coord in 0..2 {
                for delta in [step, -step] {
                    let saved = angles[q];
                    if coord == 0 {
                        angles[q].0 += delta;
                    } else {
                        angles[q].1 += delta;
                    }
                    let v = value_at(&angles);
                    if v > current {
                        current = v;
                    } else {
                        angles[q] = saved;
                    }
                }
            }
        }
        if current - start < MIN_GAIN {
            step *= 0.5;
        }
    }
    Ok(s * current)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    m: &[Complex64],
    dim: usize,
    depth: usize,
    fixed: Option<usize>,
    points: &[(f64, f64)],
    s: f64,
    angles: &mut Vec<(f64, f64)>,
    scratch: &mut Vec<Vec<Complex64>>,
    best: &mut (f64, Vec<(f64, f64)>),
) {
    if dim == 2 {
        let (v, t, p) = qubit_extremum(m, s);
        if v > best.0 {
            angles[depth] = (t, p);
            *best = (v, angles.clone());
        }
        return;
    }
    let range: Vec<usize> = match fixed {
        Some(k) => vec![k],
        None => (0..points.len()).collect(),
    };
    let mut buf = std::mem::take(&mut scratch[depth]);
    for k in range {
        let (t, p) = points[k];
        angles[depth] = (t, p);
        contract_first(m, dim, &bloch(t, p), &mut buf);
        descend(
            &buf,
            dim / 2,
            depth + 1,
            None,
            points,
            s,
            angles,
            scratch,
            best,
        );
    }
    scratch[depth] = buf;
}
