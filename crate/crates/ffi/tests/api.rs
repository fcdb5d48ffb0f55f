use std::ffi::CStr;
use std::ptr;

use cqt_ffi::*;

const RESONANT: CqtParams = CqtParams {
    omega: 1.0,
    delta: 0.0,
    g: 65.0,
    c: 1.0,
};

const DISPERSIVE: CqtParams = CqtParams {
    omega: 1.0,
    delta: -600.0,
    g: 65.0,
    c: 1.0,
};

fn last_error() -> String {
    let p = cqt_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn closed_form_matches_numeric_row() {
    let mut a = [CqtComplex::default(); CQT_N_MODES];
    let mut n = [CqtComplex::default(); CQT_N_MODES];
    unsafe {
        assert_eq!(cqt_transfer_coefficients(&DISPERSIVE, 37.5, a.as_mut_ptr()), CqtStatus::Ok);
        assert_eq!(cqt_propagator_row_b1(&DISPERSIVE, 37.5, n.as_mut_ptr()), CqtStatus::Ok);
    }
    for (x, y) in a.iter().zip(&n) {
        assert!((x.re - y.re).abs() < 1e-10 && (x.im - y.im).abs() < 1e-10);
    }
    let total: f64 = a.iter().map(|z| z.re * z.re + z.im * z.im).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn resonant_transfer_time() {
    let mut r = CqtTransferResult::default();
    let status = unsafe { cqt_find_transfer_time(&RESONANT, 0.0, 10.0, 1e-4, &mut r) };
    assert_eq!(status, CqtStatus::Ok);
    assert!((r.t_star - 4.4464).abs() < 1e-3, "{r:?}");
    assert!(r.quality >= 0.999);
}

#[test]
fn invalid_window_reports_message() {
    let mut r = CqtTransferResult::default();
    let status = unsafe { cqt_find_transfer_time(&RESONANT, 5.0, 1.0, 1e-4, &mut r) };
    assert_eq!(status, CqtStatus::InvalidArgument);
    assert!(last_error().contains("window"));
    assert_eq!(r, CqtTransferResult::default());
}

#[test]
fn qubit_fidelity_and_photons() {
    let one = CqtComplex { re: 1.0, im: 0.0 };
    let zero = CqtComplex::default();
    let q = CqtQubit {
        alpha: one,
        mu: one,
        nu: zero,
    };
    let mut f = 0.0;
    let mut n = -1.0;
    unsafe {
        assert_eq!(cqt_qubit_fidelity(&q, &RESONANT, 0.0, false, &mut f), CqtStatus::Ok);
        assert_eq!(cqt_avg_photon_number(&q, &RESONANT, 0.0, &mut n), CqtStatus::Ok);
    }
    assert!((f - (-2.0f64).exp()).abs() < 1e-12);
    assert_eq!(n, 0.0);

    let null_state = CqtQubit {
        alpha: zero,
        mu: one,
        nu: CqtComplex { re: -1.0, im: 0.0 },
    };
    let status = unsafe { cqt_qubit_fidelity(&null_state, &RESONANT, 1.0, true, &mut f) };
    assert_eq!(status, CqtStatus::DegenerateQubit);
}

#[test]
fn trajectory_handle_lifecycle() {
    let mut h: *mut CqtTrajectory = ptr::null_mut();
    unsafe {
        assert_eq!(cqt_trajectory_new(&RESONANT, 5.0, 101, &mut h), CqtStatus::Ok);
        assert!(!h.is_null());
        assert_eq!(cqt_trajectory_len(h), 101);
        let mut p = CqtTrajectoryPoint::default();
        for i in 0..101 {
            assert_eq!(cqt_trajectory_get(h, i, &mut p), CqtStatus::Ok);
            assert!((p.f_pop + p.u2 + p.u4 + p.u6 - 1.0).abs() < 1e-9);
        }
        assert_eq!(p.t, 5.0);
        assert_eq!(cqt_trajectory_get(h, 101, &mut p), CqtStatus::OutOfRange);
        cqt_trajectory_free(h);
    }

    let mut h: *mut CqtTrajectory = ptr::null_mut();
    let status = unsafe { cqt_trajectory_new(&RESONANT, 5.0, 1, &mut h) };
    assert_eq!(status, CqtStatus::InvalidArgument);
    assert!(h.is_null());
}

#[test]
fn sweep_handle_lifecycle() {
    let deltas = [-650.0, -600.0, -550.0];
    let mut h: *mut CqtSweep = ptr::null_mut();
    unsafe {
        let status = cqt_sweep_new(65.0, 1.0, deltas.as_ptr(), deltas.len(), 0.05, 150.0, 250.0, 1e-4, &mut h);
        assert_eq!(status, CqtStatus::Ok);
        assert_eq!(cqt_sweep_len(h), 3);
        let mut row = CqtDesignPoint::default();
        assert_eq!(cqt_sweep_get(h, 1, &mut row), CqtStatus::Ok);
        assert_eq!(row.delta, -600.0);
        assert!(row.feasible);
        assert!((row.result.t_star - 195.479).abs() < 0.05);
        assert_eq!(cqt_sweep_get(h, 3, &mut row), CqtStatus::OutOfRange);
        cqt_sweep_free(h);

        let status = cqt_sweep_new(65.0, 1.0, ptr::null(), 0, 0.05, 0.0, 10.0, 1e-4, &mut h);
        assert_eq!(status, CqtStatus::NullPointer);
        let status = cqt_sweep_new(65.0, 1.0, deltas.as_ptr(), 0, 0.05, 0.0, 10.0, 1e-4, &mut h);
        assert_eq!(status, CqtStatus::InvalidArgument);
    }
}

#[test]
fn oracle_through_ffi() {
    let mut r = CqtOracleReport::default();
    let alpha = CqtComplex { re: 0.2, im: 0.0 };
    unsafe {
        assert_eq!(cqt_oracle_run(&RESONANT, alpha, 1.3, 0, &mut r), CqtStatus::Ok);
    }
    assert!(r.cutoff >= 1);
    assert!(r.per_mode_dev <= 1e-4);
    assert!(r.sector_dev <= 1e-8);

    let big = CqtComplex { re: 0.1, im: 0.0 };
    let status = unsafe { cqt_oracle_run(&RESONANT, big, 1.0, 9, &mut r) };
    assert_eq!(status, CqtStatus::InfeasibleCutoff);
}
