//! Heisenberg equations of the chain as a 6x6 real symmetric matrix, and the
//! exact propagator `exp(-i M t)` obtained from its eigendecomposition.
//!
//! The numeric propagator is the reference every closed-form result in the
//! crate is checked against.

use nalgebra::{Matrix6, SymmetricEigen, Vector6};
use num_complex::Complex64;

use crate::error::{ensure_finite, Result};
use crate::params::{ModeIndex, ModelParams, N_MODES};

/// Coefficient matrix `M` of `dv/dt = -i M v` for the mode amplitudes
/// `v = (a1, b1, a2, b2, a3, b3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemMatrix {
    entries: Matrix6<f64>,
    params: ModelParams,
}

impl SystemMatrix {
    pub fn entries(&self) -> &Matrix6<f64> {
        &self.entries
    }

    pub fn get(&self, row: ModeIndex, col: ModeIndex) -> f64 {
        self.entries[(row.index(), col.index())]
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Eigendecomposition of `M`. Reuse it when evaluating many times.
    pub fn spectrum(&self) -> Spectrum {
        // M = (omega - delta/2) I + C, where C depends on (delta, g, c) only.
        // Diagonalising C keeps the eigenvalues small and makes the
        // eigenbasis bit-for-bit independent of omega.
        let p = &self.params;
        let shift = p.omega - p.delta / 2.0;
        let mut centred = self.entries;
        for site in 0..3 {
            centred[(2 * site, 2 * site)] = p.delta / 2.0;
            centred[(2 * site + 1, 2 * site + 1)] = -p.delta / 2.0;
        }
        let eig = SymmetricEigen::new(centred);
        // Rayleigh quotients are accurate to O(residual^2), tighter than the
        // values returned by the QR sweep.
        let eigenvalues = Vector6::from_fn(|k, _| {
            let v = eig.eigenvectors.column(k);
            v.dot(&(centred * v))
        });
        Spectrum {
            shift,
            eigenvalues,
            eigenvectors: eig.eigenvectors,
        }
    }
}

/// Orthonormal eigenbasis of a [`SystemMatrix`], eigenvalues stored relative
/// to `shift`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    shift: f64,
    eigenvalues: Vector6<f64>,
    eigenvectors: Matrix6<f64>,
}

impl Spectrum {
    /// Absolute eigenvalues of `M`.
    pub fn eigenvalues(&self) -> Vector6<f64> {
        self.eigenvalues.add_scalar(self.shift)
    }

    fn phases(&self, t: f64) -> [Complex64; N_MODES] {
        std::array::from_fn(|k| Complex64::from_polar(1.0, -self.eigenvalues[k] * t))
    }

    pub fn propagator(&self, t: f64) -> Result<Propagator> {
        ensure_finite("t", t)?;
        let ph = self.phases(t);
        let global = Complex64::from_polar(1.0, -self.shift * t);
        let v = &self.eigenvectors;
        let entries = Matrix6::from_fn(|i, j| {
            let s: Complex64 = (0..N_MODES).map(|k| ph[k] * (v[(i, k)] * v[(j, k)])).sum();
            global * s
        });
        Ok(Propagator { entries, time: t })
    }

    /// Row `row` of `U(t)` without forming the whole matrix.
    pub fn row(&self, row: ModeIndex, t: f64) -> Result<[Complex64; N_MODES]> {
        ensure_finite("t", t)?;
        let ph = self.phases(t);
        let global = Complex64::from_polar(1.0, -self.shift * t);
        let v = &self.eigenvectors;
        let i = row.index();
        Ok(std::array::from_fn(|j| {
            let s: Complex64 = (0..N_MODES).map(|k| ph[k] * (v[(i, k)] * v[(j, k)])).sum();
            global * s
        }))
    }
}

/// `U(t) = exp(-i M t)` acting on mode amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    entries: Matrix6<Complex64>,
    time: f64,
}

impl Propagator {
    pub fn entries(&self) -> &Matrix6<Complex64> {
        &self.entries
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn get(&self, row: ModeIndex, col: ModeIndex) -> Complex64 {
        self.entries[(row.index(), col.index())]
    }

    pub fn row(&self, row: ModeIndex) -> [Complex64; N_MODES] {
        std::array::from_fn(|j| self.entries[(row.index(), j)])
    }

    /// Largest elementwise deviation of `U U^dagger` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.entries * self.entries.adjoint();
        let mut worst = 0.0f64;
        for i in 0..N_MODES {
            for j in 0..N_MODES {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod[(i, j)] - target).norm());
            }
        }
        worst
    }

    /// Largest elementwise deviation of `U` from `U^T`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N_MODES {
            for j in 0..i {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)]).norm());
            }
        }
        worst
    }
}

/// Builds `M` from the Heisenberg equations of the rotating-wave Hamiltonian:
/// `omega` on cavity diagonals, `omega - delta` on exciton diagonals, `g`
/// between `a_i` and `b_i`, `c` between neighbouring cavities.
pub fn build_system_matrix(params: &ModelParams) -> Result<SystemMatrix> {
    params.validate()?;
    let mut m = Matrix6::<f64>::zeros();
    for site in 0..3 {
        let a = 2 * site;
        let b = a + 1;
        m[(a, a)] = params.omega;
        m[(b, b)] = params.exciton_frequency();
        m[(a, b)] = params.g;
        m[(b, a)] = params.g;
    }
    for site in 0..2 {
        let a = 2 * site;
        let next = a + 2;
        m[(a, next)] = params.c;
        m[(next, a)] = params.c;
    }
    Ok(SystemMatrix {
        entries: m,
        params: *params,
    })
}

pub fn propagator(matrix: &SystemMatrix, t: f64) -> Result<Propagator> {
    matrix.spectrum().propagator(t)
}

/// Row `b1` of `U(t)`: the Heisenberg-picture expansion of `b1(t)` over the
/// initial mode operators. `U` is complex symmetric, so this is also the
/// Schrodinger amplitude transferred out of `b1` into each mode.
pub fn propagator_row_b1(matrix: &SystemMatrix, t: f64) -> Result<[Complex64; N_MODES]> {
    matrix.spectrum().row(ModeIndex::B1, t)
}
