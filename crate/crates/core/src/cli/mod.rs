//! The `cqt` command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 I/O error, 3 validation failure.

mod config;
mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

pub use config::{RunConfig, CONFIG_KEYS, DEFAULT_OMEGA, DEFAULT_REL_TOL, DEFAULT_WINDOW};
pub use output::{num, sweep_csv, trajectory_csv, trajectory_svg, CURVES, SWEEP_HEADER, TRAJECTORY_HEADER};

use crate::error::Error;
use crate::oracle::{run_oracle, OracleTolerances};
use crate::params::ModelParams;
use crate::transfer::{
    avg_photon_number, find_transfer_time, population_trajectory, qubit_transfer_fidelity, sweep_detuning,
    TransferResult,
};
use crate::validate::{misprint_report, misprint_scan, standard_suites, DEFAULT_SEED, DEFAULT_TRIALS, MISPRINT_POINT};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Io(_) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EvolutionAccuracy { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// Coupled-cavity quantum state transfer: trajectories, transfer-time
/// search, qubit fidelities, design sweeps and self-checks.
#[derive(Debug, Parser)]
#[command(name = "cqt", version)]
pub struct Cli {
    /// `key = value` settings file; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the F_pop, U2, U4, U6 population curves as CSV (and SVG).
    Simulate {
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        grid: GridFlags,
        #[command(flatten)]
        out: OutFlags,
        /// Also write an SVG line plot to this path.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Locate the transfer time t* inside a window.
    FindTstar {
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Raw and phase-corrected fidelity of a coherent-state qubit.
    Fidelity {
        #[command(flatten)]
        model: ModelFlags,
        #[command(flatten)]
        qubit: QubitFlags,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Transfer time and cavity population over a detuning grid.
    Sweep {
        #[command(flatten)]
        couplings: CouplingFlags,
        #[command(flatten)]
        sweep: SweepFlags,
        #[command(flatten)]
        search: SearchFlags,
        #[command(flatten)]
        out: OutFlags,
    },
    /// Randomized invariant suites.
    Validate {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Also report the normalization defect of the uncorrected b1->b2 coefficient.
        #[arg(long)]
        include_as_printed_eq10: bool,
    },
    /// Compare closed forms against a truncated Fock-space simulation.
    Oracle {
        #[command(flatten)]
        model: ModelFlags,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// Evaluation time; defaults to t* found in the window.
        #[arg(long)]
        time: Option<f64>,
        /// Photons per mode kept in the Fock basis.
        #[arg(long)]
        cutoff: Option<usize>,
        #[command(flatten)]
        search: SearchFlags,
    },
}

#[derive(Debug, Args)]
struct CouplingFlags {
    /// Dot-cavity coupling.
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Cavity-cavity hopping.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
}

#[derive(Debug, Args)]
struct ModelFlags {
    /// Cavity frequency [default: 1].
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Cavity-exciton detuning.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    #[command(flatten)]
    couplings: CouplingFlags,
}

#[derive(Debug, Args)]
struct GridFlags {
    #[arg(long, allow_negative_numbers = true)]
    t_max: Option<f64>,
    /// Grid points including both ends [default: step <= pi/(10 max(a,b,f))].
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Debug, Args)]
struct SearchFlags {
    #[arg(long, allow_negative_numbers = true)]
    window_lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    window_hi: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
}

#[derive(Debug, Args)]
struct QubitFlags {
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    nu_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    nu_im: Option<f64>,
    /// Evaluation time; defaults to t* found in the window.
    #[arg(long)]
    time: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepFlags {
    #[arg(long)]
    pop_cap: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta_from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta_to: Option<f64>,
    #[arg(long)]
    delta_step: Option<f64>,
}

#[derive(Debug, Args)]
struct OutFlags {
    /// CSV destination; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl CouplingFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.g = self.g;
        cfg.c = self.c;
    }
}

impl ModelFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.omega = self.omega;
        cfg.delta = self.delta;
        self.couplings.apply(cfg);
    }
}

impl SearchFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.window_lo = self.window_lo;
        cfg.window_hi = self.window_hi;
        cfg.rel_tol = self.rel_tol;
    }
}

/// Which command to run, with flag values already folded into a
/// [`RunConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Simulate,
    FindTstar,
    Fidelity,
    Sweep,
    Validate,
    Oracle,
}

impl Command {
    fn split(self) -> (Action, RunConfig) {
        let mut cfg = RunConfig::default();
        let action = match self {
            Command::Simulate { model, grid, out, svg } => {
                model.apply(&mut cfg);
                cfg.t_max = grid.t_max;
                cfg.points = grid.points;
                cfg.out = out.out;
                cfg.svg = svg;
                Action::Simulate
            }
            Command::FindTstar { model, search } => {
                model.apply(&mut cfg);
                search.apply(&mut cfg);
                Action::FindTstar
            }
            Command::Fidelity { model, qubit, search } => {
                model.apply(&mut cfg);
                search.apply(&mut cfg);
                cfg.alpha = qubit.alpha;
                cfg.mu_re = qubit.mu_re;
                cfg.mu_im = qubit.mu_im;
                cfg.nu_re = qubit.nu_re;
                cfg.nu_im = qubit.nu_im;
                cfg.time = qubit.time;
                Action::Fidelity
            }
            Command::Sweep {
                couplings,
                sweep,
                search,
                out,
            } => {
                couplings.apply(&mut cfg);
                search.apply(&mut cfg);
                cfg.pop_cap = sweep.pop_cap;
                cfg.delta_from = sweep.delta_from;
                cfg.delta_to = sweep.delta_to;
                cfg.delta_step = sweep.delta_step;
                cfg.out = out.out;
                Action::Sweep
            }
            Command::Validate {
                seed,
                trials,
                include_as_printed_eq10,
            } => {
                cfg.seed = seed;
                cfg.trials = trials;
                cfg.include_as_printed_eq10 = include_as_printed_eq10.then_some(true);
                Action::Validate
            }
            Command::Oracle {
                model,
                alpha,
                time,
                cutoff,
                search,
            } => {
                model.apply(&mut cfg);
                search.apply(&mut cfg);
                cfg.alpha = alpha;
                cfg.time = time;
                cfg.cutoff = cutoff;
                Action::Oracle
            }
        };
        (action, cfg)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = load(cli).and_then(|(action, cfg)| execute(action, &cfg, stdout, stderr));
    let flushed = stdout.flush();
    match result.and(flushed.map_err(io_err)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(cli: Cli) -> Result<(Action, RunConfig), CliError> {
    let file = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
            RunConfig::from_config_str(&text)?
        }
        None => RunConfig::default(),
    };
    let (action, flags) = cli.command.split();
    Ok((action, file.overlay(flags)))
}

/// Runs one command against fully merged settings.
pub fn execute(action: Action, cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match action {
        Action::Simulate => cmd_simulate(cfg, stdout),
        Action::FindTstar => cmd_find_tstar(cfg, stdout),
        Action::Fidelity => cmd_fidelity(cfg, stdout),
        Action::Sweep => cmd_sweep(cfg, stdout, stderr),
        Action::Validate => cmd_validate(cfg, stdout, stderr),
        Action::Oracle => cmd_oracle(cfg, stdout),
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, body: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, body),
        None => stdout.write_all(body.as_bytes()).map_err(io_err),
    }
}

pub fn cmd_simulate(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let params = cfg.params()?;
    let t_max = cfg.t_max()?;
    let points = cfg.points(&params, t_max)?;
    let traj = population_trajectory(&params, t_max, points)?;
    emit(cfg.out.as_deref(), &trajectory_csv(&traj), stdout)?;
    if let Some(svg) = &cfg.svg {
        write_file(svg, &trajectory_svg(&traj))?;
    }
    Ok(())
}

fn search(cfg: &RunConfig, params: &ModelParams) -> Result<TransferResult, CliError> {
    let window = cfg.window()?;
    let rel_tol = cfg.rel_tol()?;
    Ok(find_transfer_time(params, window, rel_tol)?)
}

pub fn cmd_find_tstar(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let params = cfg.params()?;
    let r = search(cfg, &params)?;
    writeln!(
        stdout,
        "t_star={:?}\nquality={:?}\nphase={:?}\nmax_f_pop={:?}",
        r.t_star, r.quality, r.phase, r.max_f_pop
    )
    .map_err(io_err)
}

/// Explicit `--time`, else the transfer time found in the window.
fn evaluation_time(cfg: &RunConfig, params: &ModelParams, stdout: &mut dyn Write) -> Result<f64, CliError> {
    match cfg.time()? {
        Some(t) => {
            cfg.window()?;
            cfg.rel_tol()?;
            Ok(t)
        }
        None => {
            let r = search(cfg, params)?;
            writeln!(stdout, "t_star={:?}", r.t_star).map_err(io_err)?;
            Ok(r.t_star)
        }
    }
}

pub fn cmd_fidelity(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let params = cfg.params()?;
    let q = cfg.qubit()?;
    let t = evaluation_time(cfg, &params, stdout)?;
    let raw = qubit_transfer_fidelity(&q, &params, t, false)?;
    let corrected = qubit_transfer_fidelity(&q, &params, t, true)?;
    let photons = avg_photon_number(&q, &params, t)?;
    writeln!(
        stdout,
        "time={t:?}\nfidelity_raw={raw:?}\nfidelity_phase_corrected={corrected:?}\nphoton_number={photons:?}"
    )
    .map_err(io_err)
}

pub fn cmd_sweep(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let (g, c) = cfg.couplings()?;
    let deltas = cfg.delta_grid()?;
    let cap = cfg.pop_cap()?;
    let window = cfg.window()?;
    let rel_tol = cfg.rel_tol()?;
    let points = sweep_detuning(g, c, &deltas, cap, window, rel_tol)?;
    emit(cfg.out.as_deref(), &sweep_csv(&points), stdout)?;
    let best = points
        .iter()
        .filter(|p| p.feasible)
        .min_by(|x, y| x.result.t_star.total_cmp(&y.result.t_star).then(x.delta.total_cmp(&y.delta)));
    match best {
        Some(p) => writeln!(
            stderr,
            "fastest feasible: delta={:?} t_star={:?} quality={:?}",
            p.delta, p.result.t_star, p.result.quality
        ),
        None => writeln!(stderr, "no detuning keeps the cavity population below {cap:?}"),
    }
    .map_err(io_err)
}

/// Scan used to show where the uncorrected coefficient is worst.
const MISPRINT_SCAN: (f64, usize) = (10.0, 2001);

pub fn cmd_validate(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let trials = cfg.trials.unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        writeln!(stderr, "warning: --trials 0 draws no samples; random suites pass vacuously").map_err(io_err)?;
    }
    let mut reports = standard_suites(seed, trials);
    writeln!(stdout, "seed={seed} trials={trials}").map_err(io_err)?;
    if cfg.include_as_printed_eq10.unwrap_or(false) {
        reports.push(misprint_report());
    }
    for r in &reports {
        writeln!(stdout, "{r}").map_err(io_err)?;
    }
    if cfg.include_as_printed_eq10.unwrap_or(false) {
        let (delta, g, c, _) = MISPRINT_POINT;
        let params = ModelParams::with_unit_omega(delta, g, c)?;
        let (t, worst) = misprint_scan(&params, MISPRINT_SCAN.0, MISPRINT_SCAN.1);
        writeln!(
            stdout,
            "printed_u14_scan: delta={delta:?} g={g:?} c={c:?} t in [0, {:?}]: max defect={worst:e} at t={t:?}",
            MISPRINT_SCAN.0
        )
        .map_err(io_err)?;
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("failed suites: {}", failed.join(", "))))
    }
}

pub fn cmd_oracle(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let params = cfg.params()?;
    let alpha = cfg
        .alpha
        .ok_or_else(|| CliError::Input("missing required setting --alpha".into()))?;
    let t = evaluation_time(cfg, &params, stdout)?;
    let report = run_oracle(&params, Complex64::new(alpha, 0.0), t, cfg.cutoff)?;
    let tol = OracleTolerances::default();
    writeln!(
        stdout,
        "alpha={alpha:?}\ncutoff={}\ntime={t:?}\nfock_fidelity={:?}\nclosed_form_fidelity={:?}",
        report.cutoff, report.fock_fidelity, report.closed_form_fidelity
    )
    .map_err(io_err)?;
    let checks = [
        ("per_mode", report.per_mode_dev, tol.per_mode),
        ("photon_number", report.photon_number_dev, tol.photon_number),
        ("fidelity", report.fidelity_dev, tol.fidelity),
        ("sector", report.sector_dev, tol.sector),
    ];
    for (name, dev, limit) in checks {
        let verdict = if dev <= limit { "PASS" } else { "FAIL" };
        writeln!(stdout, "{verdict} {name}: dev={dev:e} tol={limit:e}").map_err(io_err)?;
    }
    let breaches = report.breaches(&tol);
    if breaches.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("oracle tolerance breached: {}", breaches.join(", "))))
    }
}
