//! Cross-checks of the closed-form results against the truncated Fock-space
//! simulation.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::analytic::transfer_coefficients;
use crate::error::{Error, Result};
use crate::fock::{
    fock_evolve, fock_expectation_number, fock_hamiltonian, fock_overlap, minimal_cutoff, FockConfig,
    FockState,
};
use crate::model::{build_system_matrix, propagator};
use crate::params::{ModeIndex, ModelParams};
use crate::qubit::CoherentQubit;
use crate::transfer::{avg_photon_number, qubit_transfer_fidelity};

/// Largest coherent amplitude the oracle accepts.
pub const MAX_ORACLE_ALPHA: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleTolerances {
    pub per_mode: f64,
    pub photon_number: f64,
    pub fidelity: f64,
    pub sector: f64,
}

impl Default for OracleTolerances {
    fn default() -> Self {
        OracleTolerances {
            per_mode: 1e-4,
            photon_number: 2e-3,
            fidelity: 1e-3,
            sector: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub alpha: Complex64,
    pub cutoff: usize,
    pub time: f64,
    /// `max_j |<n_j> - |alpha u_j|^2|` for a coherent state launched in `b1`.
    pub per_mode_dev: f64,
    /// Deviation of the summed cavity photon number of an even cat from the
    /// closed form, worst of `t/2` and `t`.
    pub photon_number_dev: f64,
    /// `| |<target|psi(t)>|^2 - raw fidelity |` for the same cat.
    pub fidelity_dev: f64,
    /// Single-excitation evolution against the 6x6 propagator.
    pub sector_dev: f64,
    pub fock_fidelity: f64,
    pub closed_form_fidelity: f64,
}

impl OracleReport {
    /// Names of the checks that exceed `tol`.
    pub fn breaches(&self, tol: &OracleTolerances) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !(self.per_mode_dev <= tol.per_mode) {
            out.push("per_mode");
        }
        if !(self.photon_number_dev <= tol.photon_number) {
            out.push("photon_number");
        }
        if !(self.fidelity_dev <= tol.fidelity) {
            out.push("fidelity");
        }
        if !(self.sector_dev <= tol.sector) {
            out.push("sector");
        }
        out
    }
}

/// Runs every oracle comparison at time `t`. `cutoff` defaults to the
/// smallest one whose Poisson tail is below the limit.
pub fn run_oracle(params: &ModelParams, alpha: Complex64, t: f64, cutoff: Option<usize>) -> Result<OracleReport> {
    params.validate()?;
    if !(alpha.norm() <= MAX_ORACLE_ALPHA + 1e-12) {
        return Err(Error::param(
            "alpha",
            format!("|alpha| = {} exceeds the oracle limit {MAX_ORACLE_ALPHA}", alpha.norm()),
        ));
    }
    let cfg = FockConfig::new(cutoff.unwrap_or_else(|| minimal_cutoff(alpha).max(1)))?;
    let h = fock_hamiltonian(params, &cfg)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    let coherent = CoherentQubit::new(alpha, one, zero);
    let evolved = fock_evolve(&FockState::qubit(cfg, &coherent, ModeIndex::B1)?, &h, t)?;
    let u = transfer_coefficients(params, t).u;
    let per_mode_dev = ModeIndex::ALL
        .iter()
        .map(|&m| (fock_expectation_number(&evolved, m) - (alpha * u[m.index()]).norm_sqr()).abs())
        .fold(0.0, f64::max);

    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let cat = CoherentQubit::new(alpha, s, s);
    let cat_state = FockState::qubit(cfg, &cat, ModeIndex::B1)?;
    let mut photon_number_dev = 0.0f64;
    let mut cat_at_t = None;
    for tt in [0.5 * t, t] {
        let psi = fock_evolve(&cat_state, &h, tt)?;
        let fock_n: f64 = ModeIndex::CAVITIES
            .iter()
            .map(|&m| fock_expectation_number(&psi, m))
            .sum();
        photon_number_dev = photon_number_dev.max((fock_n - avg_photon_number(&cat, params, tt)?).abs());
        cat_at_t = Some(psi);
    }
    let target = FockState::qubit(cfg, &cat, ModeIndex::B3)?;
    let fock_fidelity = fock_overlap(&target, cat_at_t.as_ref().unwrap())?.norm_sqr();
    let closed_form_fidelity = qubit_transfer_fidelity(&cat, params, t, false)?;

    let u_full = propagator(&build_system_matrix(params)?, t)?;
    let mut sector_dev = 0.0f64;
    for from in ModeIndex::ALL {
        let psi = fock_evolve(&FockState::single_excitation(cfg, from), &h, t)?;
        for to in ModeIndex::ALL {
            let mut occ = [0; 6];
            occ[to.index()] = 1;
            sector_dev = sector_dev.max((psi.amplitude(&occ) - u_full.get(to, from)).norm());
        }
    }

    Ok(OracleReport {
        alpha,
        cutoff: cfg.cutoff(),
        time: t,
        per_mode_dev,
        photon_number_dev,
        fidelity_dev: (fock_fidelity - closed_form_fidelity).abs(),
        sector_dev,
        fock_fidelity,
        closed_form_fidelity,
    })
}
