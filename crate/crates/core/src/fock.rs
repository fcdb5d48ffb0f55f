//! Brute-force truncated Fock-space simulation of the full six-mode
//! Hamiltonian. Used only to validate the linear-dynamics shortcuts at small
//! coherent amplitudes.
//!
//! Basis states are indexed lexicographically by the occupations
//! `(n_a1, n_b1, n_a2, n_b2, n_a3, n_b3)`, each in `0..=cutoff`, with `a1` the
//! most significant digit.
//!
//! The Hamiltonian conserves the total excitation number, so it is stored
//! both as a sparse matrix and as a list of number sectors. Evolution
//! diagonalises each occupied sector once (lazily, cached) and applies
//! `V exp(-i L t) V^T` exactly. The error is controlled a posteriori: every
//! sector records its eigen-residual `max_k |H v_k - l_k v_k|` and the
//! orthogonality defect of `V`, and an evolution whose accumulated bound
//! `(residual |t| + orthogonality) * sqrt(dim)` exceeds 1e-8 is refused.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::params::{ModeIndex, ModelParams, N_MODES};
use crate::qubit::{qubit_normalization, CoherentQubit};

pub const DEFAULT_DIM_BUDGET: usize = 500_000;
/// Largest acceptable Poisson weight beyond the cutoff.
pub const TAIL_LIMIT: f64 = 1e-8;
/// Largest accepted evolution error bound (vector 2-norm).
pub const EVOLVE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    cutoff: usize,
    budget: usize,
}

impl FockConfig {
    pub fn new(cutoff: usize) -> Result<Self> {
        Self::with_budget(cutoff, DEFAULT_DIM_BUDGET)
    }

    pub fn with_budget(cutoff: usize, budget: usize) -> Result<Self> {
        let cfg = FockConfig { cutoff, budget };
        let dim = (cutoff + 1).checked_pow(N_MODES as u32);
        match dim {
            Some(d) if cutoff >= 1 && d <= budget => Ok(cfg),
            _ => Err(Error::InfeasibleCutoff {
                cutoff,
                dim: dim.unwrap_or(usize::MAX),
                budget,
            }),
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn base(&self) -> usize {
        self.cutoff + 1
    }

    pub fn dim(&self) -> usize {
        self.base().pow(N_MODES as u32)
    }

    fn stride(&self, mode: usize) -> usize {
        self.base().pow((N_MODES - 1 - mode) as u32)
    }

    pub fn occupations(&self, index: usize) -> [usize; N_MODES] {
        std::array::from_fn(|m| (index / self.stride(m)) % self.base())
    }

    pub fn index_of(&self, occ: &[usize; N_MODES]) -> Option<usize> {
        let mut idx = 0;
        for (m, &n) in occ.iter().enumerate() {
            if n > self.cutoff {
                return None;
            }
            idx += n * self.stride(m);
        }
        Some(idx)
    }
}

/// `sum_{k > n} e^{-m} m^k / k!` for Poisson mean `m`, summed directly so
/// tiny tails are not lost to cancellation.
pub fn poisson_tail(mean: f64, n: usize) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let mut term = (-mean).exp();
    for k in 1..=n {
        term *= mean / k as f64;
    }
    let mut tail = 0.0;
    let mut k = n + 1;
    loop {
        term *= mean / k as f64;
        tail += term;
        if term < tail * 1e-17 || term == 0.0 || k > n + 10_000 {
            break;
        }
        k += 1;
    }
    tail
}

/// Smallest cutoff whose Poisson tail is below [`TAIL_LIMIT`].
pub fn minimal_cutoff(alpha: Complex64) -> usize {
    let mean = alpha.norm_sqr();
    (0..).find(|&n| poisson_tail(mean, n) < TAIL_LIMIT).unwrap()
}

/// Truncated single-mode coherent amplitudes `e^{-|a|^2/2} a^n / sqrt(n!)`.
pub fn coherent_fock_vector(alpha: Complex64, cfg: &FockConfig) -> Result<Vec<Complex64>> {
    let tail = poisson_tail(alpha.norm_sqr(), cfg.cutoff);
    if tail >= TAIL_LIMIT {
        return Err(Error::TailTooLarge {
            cutoff: cfg.cutoff,
            tail,
            limit: TAIL_LIMIT,
            min_cutoff: minimal_cutoff(alpha),
        });
    }
    let mut amp = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    let mut out = Vec::with_capacity(cfg.base());
    out.push(amp);
    for n in 1..=cfg.cutoff {
        amp *= alpha / (n as f64).sqrt();
        out.push(amp);
    }
    Ok(out)
}

/// Dense state over the truncated product basis. Truncation can shed norm;
/// it is never silently restored.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    cfg: FockConfig,
    amps: Vec<Complex64>,
    error_bound: f64,
}

impl FockState {
    pub fn vacuum(cfg: FockConfig) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); cfg.dim()];
        amps[0] = Complex64::new(1.0, 0.0);
        FockState {
            cfg,
            amps,
            error_bound: 0.0,
        }
    }

    pub fn basis(cfg: FockConfig, occ: &[usize; N_MODES]) -> Result<Self> {
        let idx = cfg.index_of(occ).ok_or_else(|| {
            Error::param("occupations", format!("{occ:?} exceed cutoff {}", cfg.cutoff))
        })?;
        let mut amps = vec![Complex64::new(0.0, 0.0); cfg.dim()];
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(FockState {
            cfg,
            amps,
            error_bound: 0.0,
        })
    }

    /// Single excitation in `mode`.
    pub fn single_excitation(cfg: FockConfig, mode: ModeIndex) -> Self {
        let mut occ = [0; N_MODES];
        occ[mode.index()] = 1;
        Self::basis(cfg, &occ).expect("cutoff >= 1")
    }

    pub fn from_amplitudes(cfg: FockConfig, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != cfg.dim() {
            return Err(Error::DimensionMismatch {
                expected: cfg.dim(),
                got: amps.len(),
            });
        }
        Ok(FockState {
            cfg,
            amps,
            error_bound: 0.0,
        })
    }

    /// Product of single-mode coherent states with the given amplitudes.
    pub fn product_coherent(cfg: FockConfig, alphas: &[Complex64; N_MODES]) -> Result<Self> {
        let factors: Vec<Vec<Complex64>> = alphas
            .iter()
            .map(|a| coherent_fock_vector(*a, &cfg))
            .collect::<Result<_>>()?;
        let amps = (0..cfg.dim())
            .map(|i| {
                cfg.occupations(i)
                    .iter()
                    .zip(&factors)
                    .map(|(&n, f)| f[n])
                    .product()
            })
            .collect();
        Ok(FockState {
            cfg,
            amps,
            error_bound: 0.0,
        })
    }

    /// `(mu |alpha> + nu |-alpha>) / sqrt(N)` in `mode`, vacuum elsewhere.
    pub fn qubit(cfg: FockConfig, q: &CoherentQubit, mode: ModeIndex) -> Result<Self> {
        let norm = qubit_normalization(q)?;
        let plus = coherent_fock_vector(q.alpha, &cfg)?;
        let minus = coherent_fock_vector(-q.alpha, &cfg)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); cfg.dim()];
        let scale = 1.0 / norm.sqrt();
        for n in 0..=cfg.cutoff {
            let mut occ = [0; N_MODES];
            occ[mode.index()] = n;
            let idx = cfg.index_of(&occ).unwrap();
            amps[idx] = (q.mu * plus[n] + q.nu * minus[n]) * scale;
        }
        Ok(FockState {
            cfg,
            amps,
            error_bound: 0.0,
        })
    }

    pub fn config(&self) -> FockConfig {
        self.cfg
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, occ: &[usize; N_MODES]) -> Complex64 {
        self.cfg
            .index_of(occ)
            .map_or(Complex64::new(0.0, 0.0), |i| self.amps[i])
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Accumulated a-posteriori error bound of all evolutions applied.
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    /// `<N_total>` over all six modes.
    pub fn total_number(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| self.cfg.occupations(i).iter().sum::<usize>() as f64 * a.norm_sqr())
            .sum()
    }
}

#[derive(Debug)]
struct SectorEigen {
    values: DVector<f64>,
    vectors: DMatrix<f64>,
    residual: f64,
    orthogonality: f64,
}

#[derive(Debug)]
struct Sector {
    indices: Vec<usize>,
    eigen: OnceLock<SectorEigen>,
}

/// Sparse real symmetric Hamiltonian in CSR form, plus its number sectors.
#[derive(Debug)]
pub struct FockHamiltonian {
    cfg: FockConfig,
    omega: f64,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    sectors: Vec<Sector>,
}

pub fn fock_hamiltonian(params: &ModelParams, cfg: &FockConfig) -> Result<FockHamiltonian> {
    params.validate()?;
    let cfg = FockConfig::with_budget(cfg.cutoff, cfg.budget)?;
    let dim = cfg.dim();
    let mut row_ptr = Vec::with_capacity(dim + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    let mut sector_members: Vec<Vec<usize>> = vec![Vec::new(); N_MODES * cfg.cutoff + 1];
    row_ptr.push(0);

    let mut row: Vec<(usize, f64)> = Vec::with_capacity(16);
    for i in 0..dim {
        let occ = cfg.occupations(i);
        sector_members[occ.iter().sum::<usize>()].push(i);
        row.clear();

        let mut diag = 0.0;
        for site in 0..3 {
            diag += params.omega * occ[2 * site] as f64;
            diag += params.exciton_frequency() * occ[2 * site + 1] as f64;
        }
        row.push((i, diag));

        // <i| H |j> for every j reachable by one exchange term
        let hop = |from: usize, to: usize, strength: f64, row: &mut Vec<(usize, f64)>| {
            if strength == 0.0 || occ[from] == 0 || occ[to] == cfg.cutoff {
                return;
            }
            let mut next = occ;
            next[from] -= 1;
            next[to] += 1;
            let amp = strength * ((occ[from] * (occ[to] + 1)) as f64).sqrt();
            row.push((cfg.index_of(&next).unwrap(), amp));
        };
        for site in 0..3 {
            let (a, b) = (2 * site, 2 * site + 1);
            hop(a, b, params.g, &mut row);
            hop(b, a, params.g, &mut row);
        }
        for site in 0..2 {
            let (a, next) = (2 * site, 2 * site + 2);
            hop(a, next, params.c, &mut row);
            hop(next, a, params.c, &mut row);
        }

        row.sort_by_key(|e| e.0);
        for &(j, v) in &row {
            cols.push(j);
            vals.push(v);
        }
        row_ptr.push(cols.len());
    }

    let sectors = sector_members
        .into_iter()
        .map(|indices| Sector {
            indices,
            eigen: OnceLock::new(),
        })
        .collect();
    Ok(FockHamiltonian {
        cfg,
        omega: params.omega,
        row_ptr,
        cols,
        vals,
        sectors,
    })
}

impl FockHamiltonian {
    pub fn config(&self) -> FockConfig {
        self.cfg
    }

    pub fn dim(&self) -> usize {
        self.cfg.dim()
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Stored entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[span.clone()].iter().copied().zip(self.vals[span].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[span.clone()].binary_search(&j) {
            Ok(k) => self.vals[span.start + k],
            Err(_) => 0.0,
        }
    }

    /// `max |H_ij - H_ji|` over stored entries.
    pub fn hermiticity_defect(&self) -> f64 {
        (0..self.dim())
            .flat_map(|i| self.row(i).map(move |(j, v)| (i, j, v)))
            .map(|(i, j, v)| (v - self.get(j, i)).abs())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, state: &FockState) -> Result<FockState> {
        self.check_dim(state)?;
        let amps = (0..self.dim())
            .map(|i| self.row(i).map(|(j, v)| v * state.amps[j]).sum())
            .collect();
        Ok(FockState {
            cfg: self.cfg,
            amps,
            error_bound: state.error_bound,
        })
    }

    /// Basis indices of the sector with `total` excitations.
    pub fn sector_indices(&self, total: usize) -> &[usize] {
        self.sectors.get(total).map_or(&[], |s| s.indices.as_slice())
    }

    /// Dense block of the sector with `total` excitations, with `omega * total`
    /// removed from the diagonal.
    fn sector_block(&self, total: usize) -> DMatrix<f64> {
        let idx = &self.sectors[total].indices;
        let d = idx.len();
        let mut block = DMatrix::zeros(d, d);
        for (r, &i) in idx.iter().enumerate() {
            for (j, v) in self.row(i) {
                let c = idx.binary_search(&j).expect("Hamiltonian conserves excitation number");
                block[(r, c)] = v;
            }
            block[(r, r)] -= self.omega * total as f64;
        }
        block
    }

    fn sector_eigen(&self, total: usize) -> &SectorEigen {
        self.sectors[total].eigen.get_or_init(|| {
            let block = self.sector_block(total);
            let eig = SymmetricEigen::new(block.clone());
            let d = block.nrows();
            let lambda = DMatrix::from_diagonal(&eig.eigenvalues);
            let residual_m = &block * &eig.eigenvectors - &eig.eigenvectors * lambda;
            let residual = (0..d)
                .map(|k| residual_m.column(k).norm())
                .fold(0.0, f64::max);
            let gram = eig.eigenvectors.transpose() * &eig.eigenvectors - DMatrix::identity(d, d);
            let orthogonality = gram.amax();
            SectorEigen {
                values: eig.eigenvalues,
                vectors: eig.eigenvectors,
                residual,
                orthogonality,
            }
        })
    }

    fn check_dim(&self, state: &FockState) -> Result<()> {
        if state.amps.len() != self.dim() || state.cfg.cutoff != self.cfg.cutoff {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: state.amps.len(),
            });
        }
        Ok(())
    }
}

/// `exp(-i H t) |state>`, sector by sector. Only sectors carrying amplitude
/// are diagonalised.
pub fn fock_evolve(state: &FockState, h: &FockHamiltonian, t: f64) -> Result<FockState> {
    ensure_finite("t", t)?;
    h.check_dim(state)?;
    let mut out = vec![Complex64::new(0.0, 0.0); state.amps.len()];
    let mut bound = state.error_bound;
    for (total, sector) in h.sectors.iter().enumerate() {
        let x: Vec<Complex64> = sector.indices.iter().map(|&i| state.amps[i]).collect();
        if x.iter().all(|a| *a == Complex64::new(0.0, 0.0)) {
            continue;
        }
        if t == 0.0 {
            for (&i, a) in sector.indices.iter().zip(&x) {
                out[i] = *a;
            }
            continue;
        }
        let eig = h.sector_eigen(total);
        let d = x.len();
        let global = Complex64::from_polar(1.0, -h.omega * total as f64 * t);
        // y = V^T x, scaled by the phases, then mapped back with V
        let v = &eig.vectors;
        let y: Vec<Complex64> = (0..d)
            .map(|k| {
                let proj: Complex64 = (0..d).map(|r| v[(r, k)] * x[r]).sum();
                proj * Complex64::from_polar(1.0, -eig.values[k] * t)
            })
            .collect();
        for (r, &i) in sector.indices.iter().enumerate() {
            let s: Complex64 = (0..d).map(|k| v[(r, k)] * y[k]).sum();
            out[i] = global * s;
        }
        let sector_norm: f64 = x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        bound += (eig.residual * t.abs() + eig.orthogonality) * (d as f64).sqrt() * sector_norm;
    }
    if bound > EVOLVE_TOL {
        return Err(Error::EvolutionAccuracy {
            bound,
            limit: EVOLVE_TOL,
        });
    }
    Ok(FockState {
        cfg: state.cfg,
        amps: out,
        error_bound: bound,
    })
}

/// `<n_mode>` of the state.
pub fn fock_expectation_number(state: &FockState, mode: ModeIndex) -> f64 {
    let m = mode.index();
    state
        .amps
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, a)| state.cfg.occupations(i)[m] as f64 * a.norm_sqr())
        .sum()
}

/// `<s1|s2>`.
pub fn fock_overlap(s1: &FockState, s2: &FockState) -> Result<Complex64> {
    if s1.amps.len() != s2.amps.len() {
        return Err(Error::DimensionMismatch {
            expected: s1.amps.len(),
            got: s2.amps.len(),
        });
    }
    Ok(s1.amps.iter().zip(&s2.amps).map(|(a, b)| a.conj() * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_system_matrix;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn config_budget() {
        assert_eq!(FockConfig::new(5).unwrap().dim(), 46_656);
        assert!(FockConfig::new(7).is_ok());
        assert!(matches!(FockConfig::new(8), Err(Error::InfeasibleCutoff { .. })));
        assert!(FockConfig::new(0).is_err());
    }

    #[test]
    fn index_roundtrip() {
        let cfg = FockConfig::new(3).unwrap();
        for i in [0, 1, 17, 999, cfg.dim() - 1] {
            assert_eq!(cfg.index_of(&cfg.occupations(i)), Some(i));
        }
        assert_eq!(cfg.occupations(1), [0, 0, 0, 0, 0, 1]);
        assert_eq!(cfg.index_of(&[4, 0, 0, 0, 0, 0]), None);
    }

    #[test]
    fn decoupled_hamiltonian_is_diagonal() {
        let params = ModelParams::new(1.3, -0.7, 0.0, 0.0).unwrap();
        let cfg = FockConfig::new(2).unwrap();
        let h = fock_hamiltonian(&params, &cfg).unwrap();
        assert_eq!(h.nnz(), cfg.dim());
        for i in 0..cfg.dim() {
            let occ = cfg.occupations(i);
            let photons = (occ[0] + occ[2] + occ[4]) as f64;
            let excitons = (occ[1] + occ[3] + occ[5]) as f64;
            assert!((h.get(i, i) - (1.3 * photons + 2.0 * excitons)).abs() < 1e-13);
        }
    }

    #[test]
    fn hamiltonian_is_exactly_symmetric() {
        let params = ModelParams::new(1.0, -600.0, 65.0, 1.0).unwrap();
        let h = fock_hamiltonian(&params, &FockConfig::new(2).unwrap()).unwrap();
        assert_eq!(h.hermiticity_defect(), 0.0);
    }

    #[test]
    fn one_excitation_sector_is_system_matrix() {
        let params = ModelParams::new(1.0, 3.0, 2.0, 0.5).unwrap();
        let cfg = FockConfig::new(1).unwrap();
        let h = fock_hamiltonian(&params, &cfg).unwrap();
        let m = build_system_matrix(&params).unwrap();
        for r in ModeIndex::ALL {
            for c in ModeIndex::ALL {
                let i = FockState::single_excitation(cfg, r);
                let j = FockState::single_excitation(cfg, c);
                let hij = fock_overlap(&i, &h.apply(&j).unwrap()).unwrap();
                assert_eq!(hij.re, m.get(r, c));
                assert_eq!(hij.im, 0.0);
            }
        }
    }

    #[test]
    fn coherent_vector_cases() {
        let cfg = FockConfig::new(5).unwrap();
        let vac = coherent_fock_vector(cx(0.0, 0.0), &cfg).unwrap();
        assert_eq!(vac[0], cx(1.0, 0.0));
        assert!(vac[1..].iter().all(|a| a.norm() == 0.0));

        let v = coherent_fock_vector(cx(0.3, 0.0), &cfg).unwrap();
        let kept: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        assert!(1.0 - kept < 1e-8);
        let mean: f64 = v.iter().enumerate().map(|(n, a)| n as f64 * a.norm_sqr()).sum();
        assert!((mean - 0.09).abs() < 1e-8);
    }

    #[test]
    fn poisson_tail_reference() {
        // 1 - sum_{k<=5} e^{-0.09} 0.09^k / k!, from 40-digit arithmetic
        let tail = poisson_tail(0.09, 5);
        assert!((tail - 6.833558136e-10).abs() < 1e-18, "{tail}");
        assert_eq!(poisson_tail(0.0, 0), 0.0);
    }

    #[test]
    fn tail_error_names_minimal_cutoff() {
        let cfg = FockConfig::new(2).unwrap();
        match coherent_fock_vector(cx(0.3, 0.0), &cfg) {
            Err(Error::TailTooLarge { min_cutoff, .. }) => assert_eq!(min_cutoff, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn evolve_identity_at_zero() {
        let params = ModelParams::new(1.0, 0.0, 65.0, 1.0).unwrap();
        let cfg = FockConfig::new(2).unwrap();
        let h = fock_hamiltonian(&params, &cfg).unwrap();
        let mut alphas = [cx(0.0, 0.0); N_MODES];
        alphas[1] = cx(0.01, 0.0);
        let s = FockState::product_coherent(cfg, &alphas).unwrap();
        let out = fock_evolve(&s, &h, 0.0).unwrap();
        assert_eq!(out.amplitudes(), s.amplitudes());
    }

    #[test]
    fn evolve_single_excitation_transfers() {
        let params = ModelParams::new(1.0, 0.0, 65.0, 1.0).unwrap();
        let cfg = FockConfig::new(1).unwrap();
        let h = fock_hamiltonian(&params, &cfg).unwrap();
        let s = FockState::single_excitation(cfg, ModeIndex::B1);
        let out = fock_evolve(&s, &h, 4.4464).unwrap();
        assert!(out.amplitude(&[0, 0, 0, 0, 0, 1]).norm_sqr() >= 0.999);
        assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let params = ModelParams::new(1.0, 0.0, 1.0, 1.0).unwrap();
        let h = fock_hamiltonian(&params, &FockConfig::new(2).unwrap()).unwrap();
        let s = FockState::vacuum(FockConfig::new(1).unwrap());
        assert!(matches!(fock_evolve(&s, &h, 1.0), Err(Error::DimensionMismatch { .. })));
        assert!(fock_overlap(&s, &FockState::vacuum(FockConfig::new(2).unwrap())).is_err());
        assert!(FockState::from_amplitudes(FockConfig::new(1).unwrap(), vec![cx(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn number_expectations() {
        let cfg = FockConfig::new(5).unwrap();
        let vac = FockState::vacuum(cfg);
        for m in ModeIndex::ALL {
            assert_eq!(fock_expectation_number(&vac, m), 0.0);
        }
        let mut alphas = [cx(0.0, 0.0); N_MODES];
        alphas[3] = cx(0.2, -0.1);
        let s = FockState::product_coherent(cfg, &alphas).unwrap();
        assert!((fock_expectation_number(&s, ModeIndex::B2) - 0.05).abs() < 1e-8);
        assert_eq!(fock_expectation_number(&s, ModeIndex::A1), 0.0);
    }

    #[test]
    fn overlap_basics() {
        let cfg = FockConfig::new(1).unwrap();
        let a = FockState::single_excitation(cfg, ModeIndex::A1);
        let b = FockState::single_excitation(cfg, ModeIndex::B3);
        assert_eq!(fock_overlap(&a, &a).unwrap(), cx(1.0, 0.0));
        assert_eq!(fock_overlap(&a, &b).unwrap(), cx(0.0, 0.0));
    }
}
