//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero when any
//! criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cqt_core::analytic::rabi_frequencies;
use cqt_core::oracle::run_oracle;
use cqt_core::params::ModelParams;
use cqt_core::qubit::CoherentQubit;
use cqt_core::transfer::{find_transfer_time, max_cavity_population, qubit_transfer_fidelity, TransferResult, Window};
use cqt_core::validate::{
    analytic_numeric_suite, misprint_report, misprint_scan, random_samples, unitarity_suite, DEFAULT_SEED,
    MISPRINT_MIN_DEFECT, MISPRINT_POINT,
};
use num_complex::Complex64;

const REL_TOL: f64 = 1e-4;

fn resonant() -> ModelParams {
    ModelParams::new(1.0, 0.0, 65.0, 1.0).unwrap()
}

fn dispersive() -> ModelParams {
    ModelParams::new(1.0, -600.0, 65.0, 1.0).unwrap()
}

fn dispersive_tstar() -> TransferResult {
    find_transfer_time(&dispersive(), Window::new(150.0, 250.0).unwrap(), REL_TOL).unwrap()
}

type Criterion = (&'static str, u64, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.passed &= elapsed < limit;
    o.detail = format!("{}; runtime {:.3}s (limit {}s)", o.detail, elapsed.as_secs_f64(), limit.as_secs());
    o
}

fn c1_resonant_transfer_time() -> Outcome {
    let r = find_transfer_time(&resonant(), Window::new(0.0, 10.0).unwrap(), REL_TOL).unwrap();
    outcome(
        (r.t_star - 4.4464).abs() <= 1e-3 && r.quality >= 0.999,
        format!("t*={:.6} (target 4.4464 +- 1e-3), quality={:.6} (>= 0.999)", r.t_star, r.quality),
    )
}

fn c2_dispersive_transfer_time() -> Outcome {
    let r = dispersive_tstar();
    outcome(
        (r.t_star - 195.479).abs() <= 0.05 && r.quality >= 0.998,
        format!("t*={:.6} (target 195.479 +- 0.05), quality={:.6} (>= 0.998)", r.t_star, r.quality),
    )
}

fn c3_virtual_excitation_bound() -> Outcome {
    let p = dispersive();
    let r = dispersive_tstar();
    // independent grid, 2.5x finer than the search grid
    let step = PI / (25.0 * rabi_frequencies(&p).max());
    let dense = max_cavity_population(&p, r.t_star, step);
    let worst = dense.max(r.max_f_pop);
    outcome(
        worst <= 0.05,
        format!("max F_pop on [0, t*] = {worst:.6} (search grid {:.6}, dense grid {dense:.6}; <= 0.05)", r.max_f_pop),
    )
}

fn c4_unitarity_suite() -> Outcome {
    let r = unitarity_suite(&random_samples(DEFAULT_SEED, 1000));
    outcome(r.passed && r.trials == 1000, format!("{r}"))
}

fn c5_analytic_matches_numeric() -> Outcome {
    let samples = random_samples(DEFAULT_SEED, 1000);
    let gap = analytic_numeric_suite(&samples);
    let printed = misprint_report();
    let (delta, g, c, _) = MISPRINT_POINT;
    let p = ModelParams::with_unit_omega(delta, g, c).unwrap();
    let (t_worst, scan_worst) = misprint_scan(&p, 10.0, 2001);
    let first_over = (0..=10_000)
        .map(|k| k as f64 * 1e-4)
        .find(|&t| misprint_scan(&p, t, 2).1 > MISPRINT_MIN_DEFECT);
    let onset = first_over.map_or("never on [0, 1]".to_string(), |t| format!("t~{t:.4}"));
    outcome(
        gap.passed && printed.passed,
        format!(
            "{gap} | printed-form defect at t={} is {:e} (> {MISPRINT_MIN_DEFECT:e} required); \
             defect first exceeds the bound at {onset}, max {scan_worst:e} at t={t_worst} on [0, 10]",
            MISPRINT_POINT.3, printed.worst
        ),
    )
}

fn c6_fock_oracle() -> Outcome {
    let r = dispersive_tstar();
    let rep = run_oracle(&dispersive(), Complex64::new(0.3, 0.0), r.t_star, Some(5)).unwrap();
    outcome(
        rep.per_mode_dev <= 1e-4 && rep.photon_number_dev <= 2e-3 && rep.fidelity_dev <= 1e-3,
        format!(
            "t={:.4}, cutoff {}: per-mode dev {:e} (<= 1e-4), photon-number dev {:e} (<= 2e-3), fidelity dev {:e} (<= 1e-3)",
            rep.time, rep.cutoff, rep.per_mode_dev, rep.photon_number_dev, rep.fidelity_dev
        ),
    )
}

fn c7_fidelity_endpoints() -> Outcome {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let single = CoherentQubit::new(one, one, zero);
    let raw0 = qubit_transfer_fidelity(&single, &resonant(), 0.0, false).unwrap();
    let err0 = (raw0 - (-2.0f64).exp()).abs();
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let cat = CoherentQubit::new(one, h, h);
    let t = dispersive_tstar().t_star;
    let corrected = qubit_transfer_fidelity(&cat, &dispersive(), t, true).unwrap();
    outcome(
        err0 <= 1e-12 && corrected >= 0.999,
        format!("raw F(t=0)={raw0:.15} (|F - e^-2| = {err0:e} <= 1e-12), corrected F(t*)={corrected:.6} (>= 0.999)"),
    )
}

fn simulate(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_cqt")).arg("simulate").args(args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

struct Figure {
    times: Vec<f64>,
    f_pop: Vec<f64>,
    u6: Vec<f64>,
    row_sum_defect: f64,
}

fn read_figure(csv: &str) -> Figure {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,F_pop,U2,U4,U6"));
    let mut fig = Figure {
        times: vec![],
        f_pop: vec![],
        u6: vec![],
        row_sum_defect: 0.0,
    };
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        fig.times.push(v[0]);
        fig.f_pop.push(v[1]);
        fig.u6.push(v[4]);
        fig.row_sum_defect = fig.row_sum_defect.max((v[1] + v[2] + v[3] + v[4] - 1.0).abs());
    }
    fig
}

/// Checks one figure; `f_check` judges the cavity curve.
fn figure(
    name: &str,
    args: &[&str],
    params: &ModelParams,
    certified: TransferResult,
    min_quality: f64,
    f_check: (&str, fn(f64) -> bool),
) -> (bool, String) {
    let start = Instant::now();
    let first = simulate(args);
    let elapsed = start.elapsed();
    let second = simulate(args);
    let fig = read_figure(&first);
    let (k, &peak) = fig
        .u6
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let step = fig.times[1] - fig.times[0];
    let ripple = 2.0 * PI / rabi_frequencies(params).max();
    let offset = (fig.times[k] - certified.t_star).abs();
    let max_f = fig.f_pop.iter().copied().fold(0.0, f64::max);
    let ok = fig.row_sum_defect <= 1e-9
        && first == second
        && offset <= ripple + step
        && peak >= min_quality
        && f_check.1(max_f)
        && elapsed < Duration::from_secs(2);
    (
        ok,
        format!(
            "{name}: row-sum defect {:e}, byte-identical {}, U6 max {peak:.5} at t={:.4} vs t*={:.4} \
             (offset {offset:.4} <= ripple {ripple:.4} + step {step:.4}), max F_pop {max_f:.4} ({}), runtime {:.3}s",
            fig.row_sum_defect,
            first == second,
            fig.times[k],
            certified.t_star,
            f_check.0,
            elapsed.as_secs_f64()
        ),
    )
}

fn c8_figure_reproduction() -> Outcome {
    let res = find_transfer_time(&resonant(), Window::new(0.0, 10.0).unwrap(), REL_TOL).unwrap();
    let (ok2, d2) = figure(
        "resonant",
        &["--omega", "1", "--delta", "0", "--g", "65", "--c", "1", "--t-max", "5", "--points", "2001"],
        &resonant(),
        res,
        0.999,
        (">= 0.5", |f| f >= 0.5),
    );
    let (ok3, d3) = figure(
        "dispersive",
        &["--delta", "-600", "--g", "65", "--c", "1", "--t-max", "200", "--points", "4001"],
        &dispersive(),
        dispersive_tstar(),
        0.998,
        ("<= 0.05", |f| f <= 0.05),
    );
    outcome(ok2 && ok3, format!("{d2} | {d3}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("resonant transfer time", 1, c1_resonant_transfer_time),
        ("dispersive transfer time", 5, c2_dispersive_transfer_time),
        ("virtual-excitation bound", 5, c3_virtual_excitation_bound),
        ("unitarity suite", 1, c4_unitarity_suite),
        ("analytic equals numeric, printed-form defect", 2, c5_analytic_matches_numeric),
        ("Fock-oracle equivalence", 60, c6_fock_oracle),
        ("fidelity endpoints", 1, c7_fidelity_endpoints),
        ("figure reproduction", 4, c8_figure_reproduction),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let o = timed(Duration::from_secs(limit), check);
        if !o.passed {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
