//! Closed-form transfer coefficients for the uniform three-site chain.
//!
//! The cavity hopping matrix has normal modes with shifts
//! `eps in {+sqrt(2) c, 0, -sqrt(2) c}` and site profiles
//! `(1/2, 1/sqrt2, 1/2)`, `(1/sqrt2, 0, -1/sqrt2)`, `(1/2, -1/sqrt2, 1/2)`.
//! The excitons transform the same way, so `M` splits into three 2x2 blocks
//! `[[omega + eps, g], [g, omega - delta]]`. Each block rotates at its own
//! Rabi splitting `sqrt((delta + eps)^2 + 4 g^2)` around the centre frequency
//! `omega - delta/2 + eps/2`, and every `u_j` is a weighted sum over blocks.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::params::{ModelParams, N_MODES};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Rabi splittings of the three normal-mode blocks: `a` for
/// `eps = +sqrt(2) c`, `f` for `eps = 0`, `b` for `eps = -sqrt(2) c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiFrequencies {
    pub a: f64,
    pub b: f64,
    pub f: f64,
}

impl RabiFrequencies {
    pub fn max(&self) -> f64 {
        self.a.max(self.b).max(self.f)
    }
}

/// `(u_{b1,1}, ..., u_{b1,6})` at one time, in mode order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferCoefficients {
    pub u: [Complex64; N_MODES],
    pub time: f64,
}

impl TransferCoefficients {
    pub fn populations(&self) -> [f64; N_MODES] {
        self.u.map(|x| x.norm_sqr())
    }

    /// Weight left in the three cavity modes, `|u1|^2 + |u3|^2 + |u5|^2`.
    pub fn cavity_population(&self) -> f64 {
        self.u[0].norm_sqr() + self.u[2].norm_sqr() + self.u[4].norm_sqr()
    }
}

fn splitting(detuning: f64, g: f64) -> f64 {
    detuning.hypot(2.0 * g)
}

pub fn rabi_frequencies(params: &ModelParams) -> RabiFrequencies {
    let shift = SQRT_2 * params.c;
    RabiFrequencies {
        a: splitting(params.delta + shift, params.g),
        b: splitting(params.delta - shift, params.g),
        f: splitting(params.delta, params.g),
    }
}

/// `sin(freq t / 2) / freq`, continued to `t / 2` at vanishing frequency.
fn half_sinc(freq: f64, t: f64) -> f64 {
    if freq.abs() < 1e-12 {
        0.5 * t
    } else {
        (0.5 * freq * t).sin() / freq
    }
}

/// Site profile weights `P_eps(site 1) * P_eps(site j)` for j = 1, 2, 3.
const BLOCK_WEIGHTS: [[f64; 3]; 3] = [
    [0.25, SQRT_2 / 4.0, 0.25],
    [0.5, 0.0, -0.5],
    [0.25, -SQRT_2 / 4.0, 0.25],
];

pub fn transfer_coefficients(params: &ModelParams, t: f64) -> TransferCoefficients {
    let ModelParams { omega, delta, g, c } = *params;
    let shifts = [SQRT_2 * c, 0.0, -SQRT_2 * c];
    let mut u = [Complex64::new(0.0, 0.0); N_MODES];
    if g == 0.0 {
        // the exciton is decoupled and only picks up its own phase
        u[1] = Complex64::from_polar(1.0, -(omega - delta) * t);
        return TransferCoefficients { u, time: t };
    }

    let centre = Complex64::from_polar(1.0, -(omega - 0.5 * delta) * t);
    for (shift, weights) in shifts.iter().zip(BLOCK_WEIGHTS.iter()) {
        let detuning = delta + shift;
        let freq = splitting(detuning, g);
        let s = half_sinc(freq, t);
        let phase = centre * Complex64::from_polar(1.0, -0.5 * shift * t);
        // block propagator entries seen from the exciton component
        let to_exciton = phase * Complex64::new((0.5 * freq * t).cos(), detuning * s);
        let to_cavity = phase * (-I * (2.0 * g * s));
        for site in 0..3 {
            u[2 * site] += weights[site] * to_cavity;
            u[2 * site + 1] += weights[site] * to_exciton;
        }
    }
    TransferCoefficients { u, time: t }
}

/// `|sum_j |u_j|^2 - 1|`.
pub fn unitarity_defect(coeffs: &TransferCoefficients) -> f64 {
    let total: f64 = coeffs.u.iter().map(|x| x.norm_sqr()).sum();
    (total - 1.0).abs()
}

/// Literal transcription of the `u_{b1,4}` expression whose inner sine
/// coefficients are `(2 delta + c sqrt2) / (4 A)` and `(2 delta + c sqrt2) / (4 B)`.
/// It does not conserve probability; the block decomposition gives
/// `sqrt2 (delta + sqrt2 c) / (4 a)` and `sqrt2 (delta - sqrt2 c) / (4 b)`.
/// Kept only to demonstrate the discrepancy.
pub fn as_printed_u14(params: &ModelParams, t: f64) -> Complex64 {
    let (plus, minus) = as_printed_u14_terms(params, t);
    plus - minus
}

/// The `e^{-ict/sqrt2}` and `e^{+ict/sqrt2}` terms of [`as_printed_u14`],
/// including the common centre phase.
pub fn as_printed_u14_terms(params: &ModelParams, t: f64) -> (Complex64, Complex64) {
    let inner = 2.0 * params.delta + params.c * SQRT_2;
    u14_terms(params, t, inner / 4.0, inner / 4.0)
}

/// Same split as [`as_printed_u14_terms`] for the probability-conserving form.
pub fn corrected_u14_terms(params: &ModelParams, t: f64) -> (Complex64, Complex64) {
    let shift = SQRT_2 * params.c;
    u14_terms(
        params,
        t,
        SQRT_2 * (params.delta + shift) / 4.0,
        SQRT_2 * (params.delta - shift) / 4.0,
    )
}

fn u14_terms(params: &ModelParams, t: f64, inner_a: f64, inner_b: f64) -> (Complex64, Complex64) {
    let ModelParams { omega, delta, c, .. } = *params;
    let RabiFrequencies { a, b, .. } = rabi_frequencies(params);
    let centre = Complex64::from_polar(1.0, -(omega - 0.5 * delta) * t);
    let quarter = SQRT_2 / 4.0;
    let plus = Complex64::from_polar(1.0, -c * t / SQRT_2)
        * Complex64::new(quarter * (0.5 * a * t).cos(), inner_a * half_sinc(a, t));
    let minus = Complex64::from_polar(1.0, c * t / SQRT_2)
        * Complex64::new(quarter * (0.5 * b * t).cos(), inner_b * half_sinc(b, t));
    (centre * plus, centre * minus)
}

/// The coefficient set with `u_{b1,4}` replaced by [`as_printed_u14`].
pub fn as_printed_coefficients(params: &ModelParams, t: f64) -> TransferCoefficients {
    let mut coeffs = transfer_coefficients(params, t);
    coeffs.u[3] = as_printed_u14(params, t);
    coeffs
}
