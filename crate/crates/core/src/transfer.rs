//! Population trajectories, transfer-time search, photon numbers, qubit
//! transfer fidelity and the detuning design search.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::{rabi_frequencies, transfer_coefficients};
use crate::error::{ensure_finite, Error, Result};
use crate::params::{ModelParams, N_MODES};
use crate::qubit::{branch_amplitudes, coherent_overlap, qubit_normalization, CoherentQubit};

/// Sampled `(F_pop, U2, U4, U6)` curves on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub f_pop: Vec<f64>,
    pub u2: Vec<f64>,
    pub u4: Vec<f64>,
    pub u6: Vec<f64>,
}

/// One sample of a [`Trajectory`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub f_pop: f64,
    pub u2: f64,
    pub u4: f64,
    pub u6: f64,
}

impl TrajectoryPoint {
    pub fn total(&self) -> f64 {
        self.f_pop + self.u2 + self.u4 + self.u6
    }
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn point(&self, i: usize) -> Option<TrajectoryPoint> {
        Some(TrajectoryPoint {
            t: *self.times.get(i)?,
            f_pop: self.f_pop[i],
            u2: self.u2[i],
            u4: self.u4[i],
            u6: self.u6[i],
        })
    }

    pub fn points(&self) -> impl Iterator<Item = TrajectoryPoint> + '_ {
        (0..self.len()).filter_map(|i| self.point(i))
    }

    /// Largest `|F_pop + U2 + U4 + U6 - 1|` over the grid.
    pub fn completeness_defect(&self) -> f64 {
        self.points().map(|p| (p.total() - 1.0).abs()).fold(0.0, f64::max)
    }
}

pub fn population_trajectory(params: &ModelParams, t_max: f64, n_points: usize) -> Result<Trajectory> {
    params.validate()?;
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidGrid(format!("t_max must be positive and finite, got {t_max}")));
    }
    if n_points < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 points, got {n_points}")));
    }
    let step = t_max / (n_points - 1) as f64;
    let mut traj = Trajectory {
        times: Vec::with_capacity(n_points),
        f_pop: Vec::with_capacity(n_points),
        u2: Vec::with_capacity(n_points),
        u4: Vec::with_capacity(n_points),
        u6: Vec::with_capacity(n_points),
    };
    for k in 0..n_points {
        let t = if k == n_points - 1 { t_max } else { k as f64 * step };
        let coeffs = transfer_coefficients(params, t);
        let pops = coeffs.populations();
        traj.times.push(t);
        traj.f_pop.push(pops[0] + pops[2] + pops[4]);
        traj.u2.push(pops[1]);
        traj.u4.push(pops[3]);
        traj.u6.push(pops[5]);
    }
    Ok(traj)
}

/// `|u1|^2 + |u3|^2 + |u5|^2`: the probability weight sitting in the cavities.
pub fn cavity_population_factor(params: &ModelParams, t: f64) -> f64 {
    transfer_coefficients(params, t).cavity_population()
}

/// Mean total cavity photon number of the evolved qubit state:
/// `|alpha|^2 (|mu|^2 + |nu|^2 - e^{-2|alpha|^2}(mu nu* + mu* nu)) F_pop(t) / N`.
pub fn avg_photon_number(q: &CoherentQubit, params: &ModelParams, t: f64) -> Result<f64> {
    let norm = qubit_normalization(q)?;
    let numerator = q.mu.norm_sqr() + q.nu.norm_sqr() - q.basis_overlap() * q.cross_weight();
    Ok(q.alpha.norm_sqr() * numerator * cavity_population_factor(params, t) / norm)
}

/// Closed search interval for the transfer time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo >= 0.0 && hi > lo {
            Ok(Window { lo, hi })
        } else {
            Err(Error::InvalidWindow { lo, hi })
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferResult {
    pub t_star: f64,
    /// `|u6(t_star)|^2`.
    pub quality: f64,
    /// `arg u6(t_star)` in `(-pi, pi]`.
    pub phase: f64,
    /// Grid maximum of `F_pop` over `[0, t_star]`.
    pub max_f_pop: f64,
}

/// Coarse scan step: ten samples per half-period of the fastest block.
pub fn scan_step(params: &ModelParams) -> Option<f64> {
    let fastest = rabi_frequencies(params).max();
    (fastest > 0.0).then(|| PI / (10.0 * fastest))
}

const MAX_REFINED_PEAKS: usize = 8;

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..200 {
        if hi - lo <= xtol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            if f1 > best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            if f2 > best.1 {
                best = (x2, f2);
            }
        }
    }
    best
}

fn u6_population(params: &ModelParams, t: f64) -> f64 {
    transfer_coefficients(params, t).u[5].norm_sqr()
}

/// Global maximiser of `|u6(t)|^2` over `window`: a uniform scan at
/// [`scan_step`] followed by golden-section refinement of the best few local
/// peaks until the bracket is narrower than `rel_tol * t`.
///
/// The achieved `quality` is reported as-is; whether it counts as perfect
/// transfer is the caller's call.
pub fn find_transfer_time(params: &ModelParams, window: Window, rel_tol: f64) -> Result<TransferResult> {
    params.validate()?;
    let window = Window::new(window.lo, window.hi)?;
    if !(rel_tol > 0.0 && rel_tol <= 1e-2) {
        return Err(Error::param("rel_tol", format!("must lie in (0, 1e-2], got {rel_tol}")));
    }
    let step_hint = scan_step(params).unwrap_or(window.width() / 1000.0);
    let n = ((window.width() / step_hint).ceil() as usize).max(2);
    let step = window.width() / n as f64;
    let samples: Vec<f64> = (0..=n)
        .map(|k| u6_population(params, window.lo + k as f64 * step))
        .collect();

    let mut peaks: Vec<usize> = (0..=n)
        .filter(|&k| {
            let left = if k == 0 { f64::NEG_INFINITY } else { samples[k - 1] };
            let right = if k == n { f64::NEG_INFINITY } else { samples[k + 1] };
            samples[k] >= left && samples[k] >= right
        })
        .collect();
    peaks.sort_by(|&x, &y| samples[y].total_cmp(&samples[x]).then(x.cmp(&y)));
    peaks.truncate(MAX_REFINED_PEAKS);

    let mut best = (window.lo, f64::NEG_INFINITY);
    for k in peaks {
        let centre = window.lo + k as f64 * step;
        let lo = (centre - step).max(window.lo);
        let hi = (centre + step).min(window.hi);
        let xtol = rel_tol * centre.abs().max(step);
        let (t, v) = golden_section_max(|t| u6_population(params, t), lo, hi, xtol);
        let candidate = if samples[k] >= v { (centre, samples[k]) } else { (t, v) };
        if candidate.1 > best.1 {
            best = candidate;
        }
    }

    let t_star = best.0;
    let u6 = transfer_coefficients(params, t_star).u[5];
    Ok(TransferResult {
        t_star,
        quality: u6.norm_sqr(),
        phase: u6.arg(),
        max_f_pop: max_cavity_population(params, t_star, step),
    })
}

/// Maximum of `F_pop` on a uniform grid over `[0, t_end]` no coarser than
/// `step`, endpoint included.
pub fn max_cavity_population(params: &ModelParams, t_end: f64, step: f64) -> f64 {
    if t_end <= 0.0 {
        return cavity_population_factor(params, 0.0);
    }
    let n = (t_end / step).ceil().max(1.0) as usize;
    let h = t_end / n as f64;
    (0..=n)
        .map(|k| cavity_population_factor(params, if k == n { t_end } else { k as f64 * h }))
        .fold(0.0, f64::max)
}

/// `|<target|psi(t)>|^2` for the qubit launched in `b1`.
///
/// Each superposition branch stays a product of coherent states, so every
/// inner product is a product of single-mode overlaps. The target holds the
/// qubit in `b3` with all other modes empty; with `phase_corrected` its
/// amplitude is rotated by `arg u6(t)` to factor out the known phase picked
/// up along the chain.
pub fn qubit_transfer_fidelity(
    q: &CoherentQubit,
    params: &ModelParams,
    t: f64,
    phase_corrected: bool,
) -> Result<f64> {
    params.validate()?;
    ensure_finite("t", t)?;
    let norm = qubit_normalization(q)?;
    let coeffs = transfer_coefficients(params, t);
    let evolved = branch_amplitudes(q.alpha, &coeffs.u)?.amps;
    let target_alpha = if phase_corrected {
        q.alpha * Complex64::from_polar(1.0, coeffs.u[5].arg())
    } else {
        q.alpha
    };
    let mut target = [Complex64::new(0.0, 0.0); N_MODES];
    target[N_MODES - 1] = target_alpha;

    let weights = [(1.0, q.mu), (-1.0, q.nu)];
    let mut amp = Complex64::new(0.0, 0.0);
    for &(s1, c1) in &weights {
        for &(s2, c2) in &weights {
            let overlap: Complex64 = target
                .iter()
                .zip(evolved.iter())
                .map(|(x, y)| coherent_overlap(s1 * x, s2 * y))
                .product();
            amp += c1.conj() * c2 * overlap;
        }
    }
    Ok((amp.norm_sqr() / (norm * norm)).min(1.0))
}

/// One evaluated detuning of a design sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignPoint {
    pub delta: f64,
    pub result: TransferResult,
    pub feasible: bool,
}

/// Evaluates every detuning in `deltas` (in parallel) and flags those whose
/// cavity population stays at or below `pop_cap` up to the transfer time.
/// Output order follows `deltas`.
pub fn sweep_detuning(
    g: f64,
    c: f64,
    deltas: &[f64],
    pop_cap: f64,
    window: Window,
    rel_tol: f64,
) -> Result<Vec<DesignPoint>> {
    if deltas.is_empty() {
        return Err(Error::InvalidGrid("detuning grid is empty".into()));
    }
    if !(pop_cap > 0.0 && pop_cap <= 1.0) {
        return Err(Error::param("pop_cap", format!("must lie in (0, 1], got {pop_cap}")));
    }
    let params: Vec<ModelParams> = deltas
        .iter()
        .map(|&d| ModelParams::with_unit_omega(d, g, c))
        .collect::<Result<_>>()?;
    params
        .par_iter()
        .map(|p| {
            let result = find_transfer_time(p, window, rel_tol)?;
            Ok(DesignPoint {
                delta: p.delta,
                result,
                feasible: result.max_f_pop <= pop_cap,
            })
        })
        .collect()
}

/// Feasible detunings from [`sweep_detuning`], fastest transfer first. An
/// empty list means no detuning meets the cap.
pub fn design_search(
    g: f64,
    c: f64,
    deltas: &[f64],
    pop_cap: f64,
    window: Window,
    rel_tol: f64,
) -> Result<Vec<DesignPoint>> {
    let mut feasible: Vec<DesignPoint> = sweep_detuning(g, c, deltas, pop_cap, window, rel_tol)?
        .into_iter()
        .filter(|p| p.feasible)
        .collect();
    feasible.sort_by(|x, y| {
        x.result
            .t_star
            .total_cmp(&y.result.t_star)
            .then(x.delta.total_cmp(&y.delta))
    });
    Ok(feasible)
}
