//! C ABI over `msewitness`.
//!
//! Objects cross the boundary as opaque heap handles that the caller frees
//! with the matching `*_free` function. Every fallible call returns an
//! [`MseStatus`]; on failure [`mse_last_error_message`] describes the error
//! for the calling thread. Strings returned through `out` parameters are
//! owned by the caller and released with [`mse_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use msewitness::io::{self, StateJson, WitnessJson};
use msewitness::{
    witness::criterion_bounds, CompositeSpace, DensityMatrix, Error, HermitianOperator, Mode,
    Partition, SolverConfig, Witness,
};
use num_complex::Complex64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MseStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    InvalidPartition = 5,
    PartitionMismatch = 6,
    IndexOutOfRange = 7,
    EigenDecompositionFailure = 8,
    NoConvergedSolution = 9,
    InvalidArgument = 10,
    UnsupportedSpace = 11,
    DimensionGuard = 12,
    NotDensityMatrix = 13,
    Format = 14,
    Panic = 15,
}

impl From<&Error> for MseStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DimensionMismatch(_) => MseStatus::DimensionMismatch,
            Error::NotHermitian { .. } => MseStatus::NotHermitian,
            Error::InvalidPartition(_) => MseStatus::InvalidPartition,
            Error::PartitionMismatch(_) => MseStatus::PartitionMismatch,
            Error::IndexOutOfRange { .. } => MseStatus::IndexOutOfRange,
            Error::EigenDecompositionFailure => MseStatus::EigenDecompositionFailure,
            Error::NoConvergedSolution => MseStatus::NoConvergedSolution,
            Error::InvalidArgument(_) => MseStatus::InvalidArgument,
            Error::UnsupportedSpace(_) => MseStatus::UnsupportedSpace,
            Error::DimensionGuard(_) => MseStatus::DimensionGuard,
            Error::NotDensityMatrix(_) => MseStatus::NotDensityMatrix,
            Error::Format(_) => MseStatus::Format,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MseMode {
    Sup = 0,
    Inf = 1,
}

impl From<MseMode> for Mode {
    fn from(m: MseMode) -> Mode {
        match m {
            MseMode::Sup => Mode::Sup,
            MseMode::Inf => Mode::Inf,
        }
    }
}

impl From<Mode> for MseMode {
    fn from(m: Mode) -> MseMode {
        match m {
            Mode::Sup => MseMode::Sup,
            Mode::Inf => MseMode::Inf,
        }
    }
}

/// Solver settings; start from [`mse_solver_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MseSolverConfig {
    pub mode: MseMode,
    pub tol_g: f64,
    pub tol_residual: f64,
    pub max_iter: usize,
    pub n_starts: usize,
    pub seed: u64,
    pub dedup_tol: f64,
}

impl From<&MseSolverConfig> for SolverConfig {
    fn from(c: &MseSolverConfig) -> Self {
        SolverConfig {
            mode: c.mode.into(),
            tol_g: c.tol_g,
            tol_residual: c.tol_residual,
            max_iter: c.max_iter,
            n_starts: c.n_starts,
            seed: c.seed,
            dedup_tol: c.dedup_tol,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MseVerdict {
    /// `tr(ρW)` for witnesses, the criterion margin otherwise.
    pub value: f64,
    pub detected: bool,
    pub side: MseMode,
}

impl From<msewitness::Verdict> for MseVerdict {
    fn from(v: msewitness::Verdict) -> Self {
        MseVerdict {
            value: v.value,
            detected: v.detected,
            side: v.criterion_side.into(),
        }
    }
}

/// Hermitian operator on a composite space.
pub struct MseOperator(HermitianOperator);

/// Partition of the subsystems into blocks.
pub struct MsePartition(Partition);

/// Witness `f_sup·1 − L` with its solver report.
pub struct MseWitness(Witness);

/// Density matrix on a composite space.
pub struct MseDensity(DensityMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Null(&'static str),
    Utf8,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MseStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            MseStatus::Ok
        }
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("null pointer: {name}"));
            MseStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string argument is not valid UTF-8".into());
            MseStatus::InvalidUtf8
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            MseStatus::from(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            MseStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn text<'a>(p: *const c_char, name: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = CString::new(s)
        .map_err(|_| Error::Format("output contains a NUL byte".into()))?
        .into_raw();
    Ok(())
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, Error> {
    serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mse_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn mse_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an operator from row-major real and imaginary parts of length
/// `D²`, `D = ∏ dims`. `im` may be null for a real matrix.
///
/// # Safety
/// `dims` must point to `n_dims` values; `re` (and `im` if non-null) to
/// `D²` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mse_operator_new(
    dims: *const usize,
    n_dims: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut MseOperator,
) -> MseStatus {
    guard(|| {
        if dims.is_null() {
            return Err(Failure::Null("dims"));
        }
        if re.is_null() {
            return Err(Failure::Null("re"));
        }
        let space = CompositeSpace::new(std::slice::from_raw_parts(dims, n_dims).to_vec())?;
        let n = space
            .total_dim()
            .checked_mul(space.total_dim())
            .ok_or_else(|| Error::DimensionGuard("matrix size overflows usize".into()))?;
        let re = std::slice::from_raw_parts(re, n);
        let entries = if im.is_null() {
            re.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, n);
            re.iter()
                .zip(im)
                .map(|(&a, &b)| Complex64::new(a, b))
                .collect()
        };
        put(out, MseOperator(HermitianOperator::new(space, entries)?))
    })
}

/// Parses an operator from its JSON form `{"dims", "re", "im"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mse_operator_from_json(
    json: *const c_char,
    out: *mut *mut MseOperator,
) -> MseStatus {
    guard(|| {
        let m: io::MatrixJson = parse_json(text(json, "json")?)?;
        put(out, MseOperator(io::operator_from_json(&m)?))
    })
}

/// Total Hilbert-space dimension of `op`, or 0 for null.
///
/// # Safety
/// `op` must be null or a live operator handle.
#[no_mangle]
pub unsafe extern "C" fn mse_operator_dim(op: *const MseOperator) -> usize {
    op.as_ref().map_or(0, |o| o.0.dim())
}

/// # Safety
/// `op` must be null or a live operator handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn mse_operator_free(op: *mut MseOperator) {
    free(op)
}

/// Parses a 1-based partition such as `"1,2:3"` over `n` subsystems.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mse_partition_parse(
    spec: *const c_char,
    n: usize,
    out: *mut *mut MsePartition,
) -> MseStatus {
    guard(|| put(out, MsePartition(Partition::parse(text(spec, "spec")?, n)?)))
}

/// # Safety
/// `p` must be null or a live partition handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn mse_partition_free(p: *mut MsePartition) {
    free(p)
}

#[no_mangle]
pub extern "C" fn mse_solver_config_default() -> MseSolverConfig {
    let d = SolverConfig::default();
    MseSolverConfig {
        mode: d.mode.into(),
        tol_g: d.tol_g,
        tol_residual: d.tol_residual,
        max_iter: d.max_iter,
        n_starts: d.n_starts,
        seed: d.seed,
        dedup_tol: d.dedup_tol,
    }
}

unsafe fn config(cfg: *const MseSolverConfig) -> Result<SolverConfig, Failure> {
    Ok(SolverConfig::from(deref(cfg, "cfg")?))
}

/// Extremal MSEvalue of `op` under `part` in `cfg->mode`.
///
/// # Safety
/// All pointers must be live handles or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mse_f_bound(
    op: *const MseOperator,
    part: *const MsePartition,
    cfg: *const MseSolverConfig,
    out: *mut f64,
) -> MseStatus {
    guard(|| {
        let f = msewitness::f_bound(&deref(op, "op")?.0, &deref(part, "part")?.0, &config(cfg)?)?;
        *out.as_mut().ok_or(Failure::Null("out"))? = f;
        Ok(())
    })
}

/// Full solution set as JSON; free the string with [`mse_string_free`].
///
/// # Safety
/// All pointers must be live handles or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mse_solve_json(
    op: *const MseOperator,
    part: *const MsePartition,
    cfg: *const MseSolverConfig,
    out: *mut *mut c_char,
) -> MseStatus {
    guard(|| {
        let set =
            msewitness::multistart(&deref(op, "op")?.0, &deref(part, "part")?.0, &config(cfg)?)?;
        put_string(out, io::to_json_string(&io::solution_set_to_json(&set)))
    })
}

/// Builds `W = f_sup(L)·1 − L`; `cfg->mode` is ignored.
///
/// # Safety
/// All pointers must be live handles or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mse_witness_build(
    op: *const MseOperator,
    part: *const MsePartition,
    cfg: *const MseSolverConfig,
    out: *mut *mut MseWitness,
) -> MseStatus {
    guard(|| {
        let w =
            msewitness::build_witness(&deref(op, "op")?.0, &deref(part, "part")?.0, &config(cfg)?)?;
        put(out, MseWitness(w))
    })
}

/// Parses a witness bundle as written by [`mse_witness_to_json`].
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mse_witness_from_json(
    json: *const c_char,
    out: *mut *mut MseWitness,
) -> MseStatus {
    guard(|| {
        let j: WitnessJson = parse_json(text(json, "json")?)?;
        put(out, MseWitness(io::witness_from_json(&j)?))
    })
}

/// # Safety
/// `w` must be a live witness handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mse_witness_f_sup(w: *const MseWitness, out: *mut f64) -> MseStatus {
    guard(|| {
        *out.as_mut().ok_or(Failure::Null("out"))? = deref(w, "w")?.0.f_sup;
        Ok(())
    })
}

/// # Safety
/// `w` must be a live witness handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mse_witness_to_json(
    w: *const MseWitness,
    out: *mut *mut c_char,
) -> MseStatus {
    guard(|| {
        put_string(
            out,
            io::to_json_string(&io::witness_to_json(&deref(w, "w")?.0)),
        )
    })
}

/// # Safety
/// `w` must be null or a live witness handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn mse_witness_free(w: *mut MseWitness) {
    free(w)
}

/// Parses a state: a vector `{"dims", "re", "im"}` or a density matrix.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mse_state_from_json(
    json: *const c_char,
    out: *mut *mut MseDensity,
) -> MseStatus {
    guard(|| {
        let s: StateJson = parse_json(text(json, "json")?)?;
        put(out, MseDensity(io::state_from_json(&s)?))
    })
}

/// # Safety
/// `rho` must be null or a live density handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn mse_density_free(rho: *mut MseDensity) {
    free(rho)
}

/// `tr(ρW)` and whether it signals entanglement.
///
/// # Safety
/// All pointers must be live handles or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mse_witness_evaluate(
    w: *const MseWitness,
    rho: *const MseDensity,
    out: *mut MseVerdict,
) -> MseStatus {
    guard(|| {
        let v = msewitness::witness_expectation(&deref(w, "w")?.0, &deref(rho, "rho")?.0)?;
        *out.as_mut().ok_or(Failure::Null("out"))? = v.into();
        Ok(())
    })
}

/// Compares `tr(ρL)` with both separable bounds of `op` under `part`.
///
/// # Safety
/// All pointers must be live handles or valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn mse_criterion(
    op: *const MseOperator,
    rho: *const MseDensity,
    part: *const MsePartition,
    cfg: *const MseSolverConfig,
    out: *mut MseVerdict,
) -> MseStatus {
    guard(|| {
        let o = criterion_bounds(
            &deref(op, "op")?.0,
            &deref(rho, "rho")?.0,
            &deref(part, "part")?.0,
            &config(cfg)?,
        )?;
        *out.as_mut().ok_or(Failure::Null("out"))? = o.verdict.into();
        Ok(())
    })
}
