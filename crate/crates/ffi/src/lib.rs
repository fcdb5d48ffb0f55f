//! C ABI over `cqt_core`.
//!
//! Every fallible call returns a [`CqtStatus`]; on anything but
//! `CQT_STATUS_OK` the output arguments are left untouched and
//! [`cqt_last_error_message`] describes the failure. Handles returned through
//! `*_new` functions are owned by the caller and released with the matching
//! `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cqt_core::analytic::{rabi_frequencies, transfer_coefficients};
use cqt_core::error::Error;
use cqt_core::model::{build_system_matrix, propagator_row_b1};
use cqt_core::oracle::run_oracle;
use cqt_core::params::{ModelParams, N_MODES};
use cqt_core::qubit::CoherentQubit;
use cqt_core::transfer::{
    avg_photon_number, find_transfer_time, population_trajectory, qubit_transfer_fidelity, sweep_detuning,
    DesignPoint, Trajectory, TransferResult, Window,
};
use num_complex::Complex64;

/// Number of modes in the chain, and the length of every coefficient row.
pub const CQT_N_MODES: usize = 6;
const _: () = assert!(CQT_N_MODES == N_MODES);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CqtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DegenerateQubit = 3,
    InfeasibleCutoff = 4,
    AccuracyLimit = 5,
    OutOfRange = 6,
    Panic = 99,
}

impl From<&Error> for CqtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DegenerateQubit { .. } => CqtStatus::DegenerateQubit,
            Error::InfeasibleCutoff { .. } | Error::TailTooLarge { .. } => CqtStatus::InfeasibleCutoff,
            Error::EvolutionAccuracy { .. } => CqtStatus::AccuracyLimit,
            _ => CqtStatus::InvalidArgument,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CqtParams {
    pub omega: f64,
    pub delta: f64,
    pub g: f64,
    pub c: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CqtComplex {
    pub re: f64,
    pub im: f64,
}

/// `(mu |alpha> + nu |-alpha>) / sqrt(N)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CqtQubit {
    pub alpha: CqtComplex,
    pub mu: CqtComplex,
    pub nu: CqtComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CqtRabi {
    pub a: f64,
    pub b: f64,
    pub f: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CqtTransferResult {
    pub t_star: f64,
    pub quality: f64,
    pub phase: f64,
    pub max_f_pop: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CqtTrajectoryPoint {
    pub t: f64,
    pub f_pop: f64,
    pub u2: f64,
    pub u4: f64,
    pub u6: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CqtDesignPoint {
    pub delta: f64,
    pub result: CqtTransferResult,
    pub feasible: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CqtOracleReport {
    pub cutoff: usize,
    pub time: f64,
    pub per_mode_dev: f64,
    pub photon_number_dev: f64,
    pub fidelity_dev: f64,
    pub sector_dev: f64,
    pub fock_fidelity: f64,
    pub closed_form_fidelity: f64,
}

/// Sampled population curves. Opaque.
pub struct CqtTrajectory(Trajectory);

/// Result rows of a detuning sweep, in grid order. Opaque.
pub struct CqtSweep(Vec<DesignPoint>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(CqtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(CqtStatus::from(&e), e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(CqtStatus::NullPointer, format!("`{name}` is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CqtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CqtStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            CqtStatus::Panic
        }
    }
}

unsafe fn read<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn write<T>(p: *mut T, name: &str, value: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    p.write(value);
    Ok(())
}

unsafe fn params_from(p: *const CqtParams) -> Result<ModelParams, Failure> {
    let p = read(p, "params")?;
    Ok(ModelParams::new(p.omega, p.delta, p.g, p.c)?)
}

fn cx(z: CqtComplex) -> Complex64 {
    Complex64::new(z.re, z.im)
}

fn from_cx(z: Complex64) -> CqtComplex {
    CqtComplex { re: z.re, im: z.im }
}

unsafe fn qubit_from(q: *const CqtQubit) -> Result<CoherentQubit, Failure> {
    let q = read(q, "qubit")?;
    Ok(CoherentQubit::new(cx(q.alpha), cx(q.mu), cx(q.nu)))
}

fn transfer_result(r: &TransferResult) -> CqtTransferResult {
    CqtTransferResult {
        t_star: r.t_star,
        quality: r.quality,
        phase: r.phase,
        max_f_pop: r.max_f_pop,
    }
}

unsafe fn write_row(out: *mut CqtComplex, row: &[Complex64; N_MODES]) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    for (j, z) in row.iter().enumerate() {
        out.add(j).write(from_cx(*z));
    }
    Ok(())
}

/// Static description of a status code; unrecognised codes get a generic
/// string.
#[no_mangle]
pub extern "C" fn cqt_status_string(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer argument\0",
        2 => b"invalid argument\0",
        3 => b"degenerate qubit\0",
        4 => b"infeasible Fock cutoff\0",
        5 => b"accuracy limit exceeded\0",
        6 => b"index out of range\0",
        99 => b"internal panic\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL after a
/// success. Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cqt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cqt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `params` and `out` must be valid pointers or NULL.
#[no_mangle]
pub unsafe extern "C" fn cqt_rabi_frequencies(params: *const CqtParams, out: *mut CqtRabi) -> CqtStatus {
    guard(|| {
        let r = rabi_frequencies(&params_from(params)?);
        write(out, "out", CqtRabi { a: r.a, b: r.b, f: r.f })
    })
}

/// Closed-form row `u_1..u_6` of the `b1` operator at time `t`.
///
/// # Safety
/// `out` must point to at least [`CQT_N_MODES`] writable elements.
#[no_mangle]
pub unsafe extern "C" fn cqt_transfer_coefficients(
    params: *const CqtParams,
    t: f64,
    out: *mut CqtComplex,
) -> CqtStatus {
    guard(|| {
        let p = params_from(params)?;
        if !t.is_finite() {
            return Err(Failure(CqtStatus::InvalidArgument, format!("t must be finite, got {t}")));
        }
        write_row(out, &transfer_coefficients(&p, t).u)
    })
}

/// Same row from the numeric eigendecomposition.
///
/// # Safety
/// `out` must point to at least [`CQT_N_MODES`] writable elements.
#[no_mangle]
pub unsafe extern "C" fn cqt_propagator_row_b1(params: *const CqtParams, t: f64, out: *mut CqtComplex) -> CqtStatus {
    guard(|| {
        let m = build_system_matrix(&params_from(params)?)?;
        write_row(out, &propagator_row_b1(&m, t)?)
    })
}

/// # Safety
/// `params` and `out` must be valid pointers or NULL.
#[no_mangle]
pub unsafe extern "C" fn cqt_find_transfer_time(
    params: *const CqtParams,
    window_lo: f64,
    window_hi: f64,
    rel_tol: f64,
    out: *mut CqtTransferResult,
) -> CqtStatus {
    guard(|| {
        let p = params_from(params)?;
        let r = find_transfer_time(&p, Window::new(window_lo, window_hi)?, rel_tol)?;
        write(out, "out", transfer_result(&r))
    })
}

/// # Safety
/// Pointer arguments must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn cqt_qubit_fidelity(
    qubit: *const CqtQubit,
    params: *const CqtParams,
    t: f64,
    phase_corrected: bool,
    out: *mut f64,
) -> CqtStatus {
    guard(|| {
        let q = qubit_from(qubit)?;
        let f = qubit_transfer_fidelity(&q, &params_from(params)?, t, phase_corrected)?;
        write(out, "out", f)
    })
}

/// Mean total cavity photon number at time `t`.
///
/// # Safety
/// Pointer arguments must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn cqt_avg_photon_number(
    qubit: *const CqtQubit,
    params: *const CqtParams,
    t: f64,
    out: *mut f64,
) -> CqtStatus {
    guard(|| {
        let q = qubit_from(qubit)?;
        let p = params_from(params)?;
        if !t.is_finite() {
            return Err(Failure(CqtStatus::InvalidArgument, format!("t must be finite, got {t}")));
        }
        write(out, "out", avg_photon_number(&q, &p, t)?)
    })
}

/// Population curves on `n_points` uniform samples of `[0, t_max]`.
///
/// # Safety
/// `out` must be a valid pointer; the handle written there must be released
/// with [`cqt_trajectory_free`].
#[no_mangle]
pub unsafe extern "C" fn cqt_trajectory_new(
    params: *const CqtParams,
    t_max: f64,
    n_points: usize,
    out: *mut *mut CqtTrajectory,
) -> CqtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let traj = population_trajectory(&params_from(params)?, t_max, n_points)?;
        out.write(Box::into_raw(Box::new(CqtTrajectory(traj))));
        Ok(())
    })
}

/// Number of samples; 0 for NULL.
///
/// # Safety
/// `traj` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cqt_trajectory_len(traj: *const CqtTrajectory) -> usize {
    traj.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `traj` must be NULL or a live handle; `out` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn cqt_trajectory_get(
    traj: *const CqtTrajectory,
    index: usize,
    out: *mut CqtTrajectoryPoint,
) -> CqtStatus {
    guard(|| {
        let traj = read(traj, "traj")?;
        let p = traj.0.point(index).ok_or_else(|| {
            Failure(
                CqtStatus::OutOfRange,
                format!("index {index} out of range for {} samples", traj.0.len()),
            )
        })?;
        write(
            out,
            "out",
            CqtTrajectoryPoint {
                t: p.t,
                f_pop: p.f_pop,
                u2: p.u2,
                u4: p.u4,
                u6: p.u6,
            },
        )
    })
}

/// Releases a trajectory. NULL is a no-op.
///
/// # Safety
/// `traj` must be NULL or a handle from [`cqt_trajectory_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cqt_trajectory_free(traj: *mut CqtTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// Transfer search at every detuning in `deltas` (with `omega = 1`),
/// flagging rows whose cavity population stays at or below `pop_cap`.
///
/// # Safety
/// `deltas` must point to `n_deltas` readable values; `out` as for
/// [`cqt_trajectory_new`], released with [`cqt_sweep_free`].
#[no_mangle]
pub unsafe extern "C" fn cqt_sweep_new(
    g: f64,
    c: f64,
    deltas: *const f64,
    n_deltas: usize,
    pop_cap: f64,
    window_lo: f64,
    window_hi: f64,
    rel_tol: f64,
    out: *mut *mut CqtSweep,
) -> CqtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if deltas.is_null() {
            return Err(null("deltas"));
        }
        let grid = std::slice::from_raw_parts(deltas, n_deltas);
        let rows = sweep_detuning(g, c, grid, pop_cap, Window::new(window_lo, window_hi)?, rel_tol)?;
        out.write(Box::into_raw(Box::new(CqtSweep(rows))));
        Ok(())
    })
}

/// Number of rows; 0 for NULL.
///
/// # Safety
/// `sweep` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cqt_sweep_len(sweep: *const CqtSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `sweep` must be NULL or a live handle; `out` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn cqt_sweep_get(sweep: *const CqtSweep, index: usize, out: *mut CqtDesignPoint) -> CqtStatus {
    guard(|| {
        let sweep = read(sweep, "sweep")?;
        let p = sweep.0.get(index).ok_or_else(|| {
            Failure(
                CqtStatus::OutOfRange,
                format!("index {index} out of range for {} rows", sweep.0.len()),
            )
        })?;
        write(
            out,
            "out",
            CqtDesignPoint {
                delta: p.delta,
                result: transfer_result(&p.result),
                feasible: p.feasible,
            },
        )
    })
}

/// Releases a sweep. NULL is a no-op.
///
/// # Safety
/// `sweep` must be NULL or a handle from [`cqt_sweep_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cqt_sweep_free(sweep: *mut CqtSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// Closed forms against the truncated Fock simulation at time `t`.
/// `cutoff = 0` picks the smallest adequate cutoff.
///
/// # Safety
/// `params` and `out` must be valid pointers or NULL.
#[no_mangle]
pub unsafe extern "C" fn cqt_oracle_run(
    params: *const CqtParams,
    alpha: CqtComplex,
    t: f64,
    cutoff: usize,
    out: *mut CqtOracleReport,
) -> CqtStatus {
    guard(|| {
        let p = params_from(params)?;
        let r = run_oracle(&p, cx(alpha), t, (cutoff > 0).then_some(cutoff))?;
        write(
            out,
            "out",
            CqtOracleReport {
                cutoff: r.cutoff,
                time: r.time,
                per_mode_dev: r.per_mode_dev,
                photon_number_dev: r.photon_number_dev,
                fidelity_dev: r.fidelity_dev,
                sector_dev: r.sector_dev,
                fock_fidelity: r.fock_fidelity,
                closed_form_fidelity: r.closed_form_fidelity,
            },
        )
    })
}
