//! Coherent-state logical qubits `(mu |alpha> + nu |-alpha>) / sqrt(N)` and
//! the coherent-state overlap arithmetic that fidelities reduce to.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::N_MODES;

/// Below this normalization the logical state is numerically null.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Tolerance on `sum |u_j|^2 = 1` accepted by [`branch_amplitudes`].
pub const ROW_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentQubit {
    pub alpha: Complex64,
    pub mu: Complex64,
    pub nu: Complex64,
}

impl CoherentQubit {
    pub fn new(alpha: Complex64, mu: Complex64, nu: Complex64) -> Self {
        CoherentQubit { alpha, mu, nu }
    }

    /// `e^{-2|alpha|^2}`, the overlap of the two logical states.
    pub fn basis_overlap(&self) -> f64 {
        (-2.0 * self.alpha.norm_sqr()).exp()
    }

    /// `2 Re(mu conj(nu))`, i.e. `mu nu* + mu* nu`.
    pub(crate) fn cross_weight(&self) -> f64 {
        2.0 * (self.mu * self.nu.conj()).re
    }

    /// Normalization without the degeneracy check.
    pub fn raw_normalization(&self) -> f64 {
        self.mu.norm_sqr() + self.nu.norm_sqr() + self.basis_overlap() * self.cross_weight()
    }

    /// Global-phase-free copy `(e^{i phi} mu, e^{i phi} nu)`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let p = Complex64::from_polar(1.0, phi);
        CoherentQubit {
            alpha: self.alpha,
            mu: p * self.mu,
            nu: p * self.nu,
        }
    }
}

/// `N = |mu|^2 + |nu|^2 + e^{-2|alpha|^2} (mu nu* + mu* nu)`. Fails when the
/// state is null (`N <= 1e-12`), e.g. `mu = -nu` with `alpha = 0`.
pub fn qubit_normalization(q: &CoherentQubit) -> Result<f64> {
    let norm = q.raw_normalization();
    if norm.is_finite() && norm > DEGENERATE_NORM {
        Ok(norm)
    } else {
        Err(Error::DegenerateQubit {
            norm,
            threshold: DEGENERATE_NORM,
        })
    }
}

/// `<beta|gamma> = exp(-|beta|^2/2 - |gamma|^2/2 + conj(beta) gamma)`.
pub fn coherent_overlap(beta: Complex64, gamma: Complex64) -> Complex64 {
    (beta.conj() * gamma - 0.5 * (beta.norm_sqr() + gamma.norm_sqr())).exp()
}

/// Overlap of two six-mode product coherent states.
pub fn product_overlap(left: &[Complex64; N_MODES], right: &[Complex64; N_MODES]) -> Complex64 {
    left.iter()
        .zip(right)
        .map(|(b, g)| coherent_overlap(*b, *g))
        .product()
}

/// Per-mode coherent amplitudes of one superposition branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchAmplitudes {
    pub amps: [Complex64; N_MODES],
}

impl BranchAmplitudes {
    pub fn total_excitation(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn negated(&self) -> Self {
        BranchAmplitudes {
            amps: self.amps.map(|a| -a),
        }
    }
}

/// Amplitudes `alpha * u_j` of the branch that started as `|alpha>` in `b1`.
///
/// `row` is the Heisenberg row of `b1`; since `U` is complex symmetric it
/// doubles as the Schrodinger column out of `b1`.
pub fn branch_amplitudes(alpha: Complex64, row: &[Complex64; N_MODES]) -> Result<BranchAmplitudes> {
    let sum: f64 = row.iter().map(|u| u.norm_sqr()).sum();
    if !sum.is_finite() || (sum - 1.0).abs() > ROW_NORM_TOL {
        return Err(Error::NotNormalized { sum });
    }
    Ok(BranchAmplitudes {
        amps: row.map(|u| alpha * u),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_row(j: usize) -> [Complex64; N_MODES] {
        let mut row = [c(0.0, 0.0); N_MODES];
        row[j] = c(1.0, 0.0);
        row
    }

    #[test]
    fn normalization_single_branch() {
        let q = CoherentQubit::new(c(1.7, -0.4), c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(qubit_normalization(&q).unwrap(), 1.0);
    }

    #[test]
    fn normalization_vacuum_cat() {
        let q = CoherentQubit::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(qubit_normalization(&q).unwrap(), 4.0);
    }

    #[test]
    fn normalization_even_cat() {
        let q = CoherentQubit::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        let n = qubit_normalization(&q).unwrap();
        assert!((n - (2.0 + 2.0 * (-2.0f64).exp())).abs() < 1e-15);
        assert!((n - 2.27067).abs() < 1e-5);
    }

    #[test]
    fn degenerate_qubit_rejected() {
        let q = CoherentQubit::new(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0));
        assert!(matches!(
            qubit_normalization(&q),
            Err(Error::DegenerateQubit { .. })
        ));
    }

    #[test]
    fn overlap_identities() {
        let b = c(0.4, -1.1);
        assert!((coherent_overlap(b, b) - 1.0).norm() < 1e-15);
        let a = 0.8;
        let x = coherent_overlap(c(-a, 0.0), c(a, 0.0));
        assert!((x - (-2.0 * a * a).exp()).norm() < 1e-15);
        let y = coherent_overlap(c(0.0, 0.0), b);
        assert!((y - (-0.5 * b.norm_sqr()).exp()).norm() < 1e-15);
    }

    #[test]
    fn branch_amplitudes_basic() {
        let w = branch_amplitudes(c(1.0, 0.0), &unit_row(1)).unwrap();
        assert_eq!(w.amps[1], c(1.0, 0.0));
        assert!(w.amps.iter().enumerate().all(|(j, a)| j == 1 || a.norm() == 0.0));

        let w = branch_amplitudes(c(2.0, 0.0), &unit_row(5)).unwrap();
        assert_eq!(w.amps[5].norm(), 2.0);
        assert!((w.total_excitation() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn branch_amplitudes_reject_unnormalized_row() {
        let mut row = unit_row(1);
        row[0] = c(0.1, 0.0);
        assert!(matches!(
            branch_amplitudes(c(1.0, 0.0), &row),
            Err(Error::NotNormalized { .. })
        ));
    }
}
