//! Witnesses `W = f_sup(L)·1 − L` and the two-sided separability criterion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{expectation, DensityMatrix, HermitianOperator};
use crate::partition::Partition;
use crate::rng;
use crate::solver::{multistart, Mode, MseSolutionSet, SolverConfig};

/// Values below `-DETECTION_TOL` (witness) or margins above it (criterion)
/// count as detection; the boundary itself is "not detected".
pub const DETECTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub operator: HermitianOperator,
    pub partition: Partition,
    pub f_sup: f64,
    pub source: HermitianOperator,
    /// The multistart run that produced `f_sup`.
    pub solver_report: MseSolutionSet,
}

impl Witness {
    /// Reassembles a witness from its stored parts; the source operator is
    /// recovered as `f_sup·1 − W`.
    pub fn from_parts(
        operator: HermitianOperator,
        partition: Partition,
        f_sup: f64,
        solver_report: MseSolutionSet,
    ) -> Result<Self> {
        if partition.num_subsystems() != operator.space().num_subsystems() {
            return Err(Error::PartitionMismatch(format!(
                "partition {partition} for an operator on {} subsystems",
                operator.space().num_subsystems()
            )));
        }
        let source = operator.affine(-1.0, f_sup);
        Ok(Self {
            operator,
            partition,
            f_sup,
            source,
            solver_report,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    /// `tr(ρW)` for witnesses, the criterion margin otherwise.
    pub value: f64,
    pub detected: bool,
    pub criterion_side: Mode,
}

/// Builds `W = f_sup(L)·1 − L`; `cfg.mode` is overridden to sup.
pub fn build_witness(
    l: &HermitianOperator,
    partition: &Partition,
    cfg: &SolverConfig,
) -> Result<Witness> {
    let report = multistart(l, partition, &cfg.clone().with_mode(Mode::Sup))?;
    let f_sup = report.f_value;
    Ok(Witness {
        operator: l.affine(-1.0, f_sup),
        partition: partition.clone(),
        f_sup,
        source: l.clone(),
        solver_report: report,
    })
}

/// `tr(ρW)`; negative values (beyond the tolerance) signal entanglement
/// with respect to the witness partition.
pub fn witness_expectation(w: &Witness, rho: &DensityMatrix) -> Result<Verdict> {
    let value = rho.expectation(&w.operator)?;
    Ok(Verdict {
        value,
        detected: value < -DETECTION_TOL,
        criterion_side: Mode::Sup,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    /// `tr(ρL)`.
    pub expectation: f64,
    pub f_sup: f64,
    pub f_inf: f64,
    pub verdict: Verdict,
}

/// Compares `tr(ρL)` against both separable bounds.
pub fn criterion_bounds(
    l: &HermitianOperator,
    rho: &DensityMatrix,
    partition: &Partition,
    cfg: &SolverConfig,
) -> Result<CriterionOutcome> {
    let t = rho.expectation(l)?;
    let f_sup = multistart(l, partition, &cfg.clone().with_mode(Mode::Sup))?.f_value;
    let f_inf = multistart(l, partition, &cfg.clone().with_mode(Mode::Inf))?.f_value;
    Ok(outcome(t, f_sup, f_inf))
}

pub(crate) fn outcome(t: f64, f_sup: f64, f_inf: f64) -> CriterionOutcome {
    let upper = t - f_sup;
    let lower = f_inf - t;
    let (value, side) = if upper >= lower {
        (upper, Mode::Sup)
    } else {
        (lower, Mode::Inf)
    };
    CriterionOutcome {
        expectation: t,
        f_sup,
        f_inf,
        verdict: Verdict {
            value,
            detected: value > DETECTION_TOL,
            criterion_side: side,
        },
    }
}

/// Entanglement test via `tr(ρL) > f_sup` or `tr(ρL) < f_inf`.
pub fn criterion(
    l: &HermitianOperator,
    rho: &DensityMatrix,
    partition: &Partition,
    cfg: &SolverConfig,
) -> Result<Verdict> {
    criterion_bounds(l, rho, partition, cfg).map(|o| o.verdict)
}

/// Smallest `⟨W⟩` over `n_samples` seeded Haar product states of the
/// witness partition. A sanity check for `f_sup`: a correct bound keeps
/// this non-negative.
pub fn separable_minimum(w: &Witness, n_samples: usize, seed: u64) -> Result<f64> {
    let mut min = f64::INFINITY;
    for k in 0..n_samples as u64 {
        let v = rng::haar_product(w.operator.space(), &w.partition, seed, k)?;
        min = min.min(expectation(&w.operator, &v)?);
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{tensor_product, CompositeSpace};
    use crate::{pauli, states};

    #[test]
    fn identity_gives_zero_witness() {
        let space = CompositeSpace::qubits(2).unwrap();
        let w = build_witness(
            &HermitianOperator::identity(space),
            &Partition::finest(2).unwrap(),
            &SolverConfig::default(),
        )
        .unwrap();
        assert!(w.operator.max_abs_entry() < 1e-12);
    }

    #[test]
    fn sigma_zz_witness() {
        let l = tensor_product(&[pauli::z(), pauli::z()]).unwrap();
        let w =
            build_witness(&l, &Partition::finest(2).unwrap(), &SolverConfig::default()).unwrap();
        let expect = HermitianOperator::diagonal(l.space().clone(), &[0.0, 2.0, 2.0, 0.0]).unwrap();
        assert!(w.operator.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn ghz_witness_values() {
        let ghz = states::ghz(3, 2).unwrap();
        let p = Partition::finest(3).unwrap();
        let w = build_witness(&ghz.projector(), &p, &SolverConfig::default()).unwrap();
        let v = witness_expectation(&w, &ghz.density()).unwrap();
        assert!((v.value + 0.5).abs() < 1e-9 && v.detected);
        let mixed = DensityMatrix::maximally_mixed(ghz.space().clone());
        let v = witness_expectation(&w, &mixed).unwrap();
        assert!((v.value - 0.375).abs() < 1e-9 && !v.detected);
        let zero = states::PureState::new(ghz.space().clone(), {
            let mut a = vec![num_complex::Complex64::new(0.0, 0.0); 8];
            a[0] = num_complex::Complex64::new(1.0, 0.0);
            a
        })
        .unwrap();
        let v = witness_expectation(&w, &zero.density()).unwrap();
        assert!(v.value.abs() < 1e-9 && !v.detected);
    }

    #[test]
    fn singlet_not_detected_by_zz() {
        let l = tensor_product(&[pauli::z(), pauli::z()]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let c = |x: f64| num_complex::Complex64::new(x, 0.0);
        let singlet =
            states::PureState::new(l.space().clone(), vec![c(0.0), c(s), c(-s), c(0.0)]).unwrap();
        let o = criterion_bounds(
            &l,
            &singlet.density(),
            &Partition::finest(2).unwrap(),
            &SolverConfig::default(),
        )
        .unwrap();
        assert!((o.expectation + 1.0).abs() < 1e-12);
        assert!((o.f_inf + 1.0).abs() < 1e-12);
        assert!(!o.verdict.detected);
    }

    #[test]
    fn dimension_mismatch() {
        let ghz = states::ghz(3, 2).unwrap();
        let w = build_witness(
            &ghz.projector(),
            &Partition::finest(3).unwrap(),
            &SolverConfig::default(),
        )
        .unwrap();
        let rho = DensityMatrix::maximally_mixed(CompositeSpace::qubits(2).unwrap());
        assert!(matches!(
            witness_expectation(&w, &rho),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn outcome_picks_larger_side() {
        let o = outcome(-2.0, 1.0, -1.0);
        assert_eq!(o.verdict.criterion_side, Mode::Inf);
        assert!((o.verdict.value - 1.0).abs() < 1e-15);
        assert!(o.verdict.detected);
        let o = outcome(0.0, 1.0, -1.0);
        assert!(!o.verdict.detected);
    }
}
