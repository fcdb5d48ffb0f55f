//! Settings merged from an optional `key = value` file and command-line
//! flags, plus the typed views each command validates up front.

use std::path::PathBuf;

use num_complex::Complex64;

use super::CliError;
use crate::params::ModelParams;
use crate::qubit::{qubit_normalization, CoherentQubit};
use crate::transfer::{scan_step, Window};

pub const DEFAULT_OMEGA: f64 = 1.0;
pub const DEFAULT_REL_TOL: f64 = 1e-4;
pub const DEFAULT_WINDOW: (f64, f64) = (0.0, 10.0);
/// Grid size used when every Rabi frequency vanishes and the default
/// spacing is undefined.
pub const FALLBACK_POINTS: usize = 1001;

/// Raw settings, every field optional until a command asks for it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub omega: Option<f64>,
    pub delta: Option<f64>,
    pub g: Option<f64>,
    pub c: Option<f64>,
    pub t_max: Option<f64>,
    pub points: Option<usize>,
    pub window_lo: Option<f64>,
    pub window_hi: Option<f64>,
    pub rel_tol: Option<f64>,
    pub alpha: Option<f64>,
    pub mu_re: Option<f64>,
    pub mu_im: Option<f64>,
    pub nu_re: Option<f64>,
    pub nu_im: Option<f64>,
    pub time: Option<f64>,
    pub pop_cap: Option<f64>,
    pub delta_from: Option<f64>,
    pub delta_to: Option<f64>,
    pub delta_step: Option<f64>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub cutoff: Option<usize>,
    pub include_as_printed_eq10: Option<bool>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// Keys accepted in a config file, spelled like the flags.
pub const CONFIG_KEYS: &[&str] = &[
    "omega",
    "delta",
    "g",
    "c",
    "t-max",
    "points",
    "window-lo",
    "window-hi",
    "rel-tol",
    "alpha",
    "mu-re",
    "mu-im",
    "nu-re",
    "nu-im",
    "time",
    "pop-cap",
    "delta-from",
    "delta-to",
    "delta-step",
    "seed",
    "trials",
    "cutoff",
    "include-as-printed-eq10",
    "out",
    "svg",
];

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Input(format!("config line {line}: cannot parse `{value}` for `{key}`")))
}

impl RunConfig {
    /// Parses a config file body. Blank lines and `#` comments are skipped;
    /// `_` and `-` are interchangeable in keys.
    pub fn from_config_str(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("config line {line_no}: expected `key = value`")))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            cfg.set(&key, value, line_no)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, v: &str, line: usize) -> Result<(), CliError> {
        let f = |v: &str| parse_value::<f64>(key, v, line);
        match key {
            "omega" => self.omega = Some(f(v)?),
            "delta" => self.delta = Some(f(v)?),
            "g" => self.g = Some(f(v)?),
            "c" => self.c = Some(f(v)?),
            "t-max" => self.t_max = Some(f(v)?),
            "points" => self.points = Some(parse_value(key, v, line)?),
            "window-lo" => self.window_lo = Some(f(v)?),
            "window-hi" => self.window_hi = Some(f(v)?),
            "rel-tol" => self.rel_tol = Some(f(v)?),
            "alpha" => self.alpha = Some(f(v)?),
            "mu-re" => self.mu_re = Some(f(v)?),
            "mu-im" => self.mu_im = Some(f(v)?),
            "nu-re" => self.nu_re = Some(f(v)?),
            "nu-im" => self.nu_im = Some(f(v)?),
            "time" => self.time = Some(f(v)?),
            "pop-cap" => self.pop_cap = Some(f(v)?),
            "delta-from" => self.delta_from = Some(f(v)?),
            "delta-to" => self.delta_to = Some(f(v)?),
            "delta-step" => self.delta_step = Some(f(v)?),
            "seed" => self.seed = Some(parse_value(key, v, line)?),
            "trials" => self.trials = Some(parse_value(key, v, line)?),
            "cutoff" => self.cutoff = Some(parse_value(key, v, line)?),
            "include-as-printed-eq10" => self.include_as_printed_eq10 = Some(parse_value(key, v, line)?),
            "out" => self.out = Some(PathBuf::from(v)),
            "svg" => self.svg = Some(PathBuf::from(v)),
            _ => return Err(CliError::Input(format!("config line {line}: unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Field-wise `other.or(self)`: values present in `other` win.
    pub fn overlay(self, other: RunConfig) -> RunConfig {
        RunConfig {
            omega: other.omega.or(self.omega),
            delta: other.delta.or(self.delta),
            g: other.g.or(self.g),
            c: other.c.or(self.c),
            t_max: other.t_max.or(self.t_max),
            points: other.points.or(self.points),
            window_lo: other.window_lo.or(self.window_lo),
            window_hi: other.window_hi.or(self.window_hi),
            rel_tol: other.rel_tol.or(self.rel_tol),
            alpha: other.alpha.or(self.alpha),
            mu_re: other.mu_re.or(self.mu_re),
            mu_im: other.mu_im.or(self.mu_im),
            nu_re: other.nu_re.or(self.nu_re),
            nu_im: other.nu_im.or(self.nu_im),
            time: other.time.or(self.time),
            pop_cap: other.pop_cap.or(self.pop_cap),
            delta_from: other.delta_from.or(self.delta_from),
            delta_to: other.delta_to.or(self.delta_to),
            delta_step: other.delta_step.or(self.delta_step),
            seed: other.seed.or(self.seed),
            trials: other.trials.or(self.trials),
            cutoff: other.cutoff.or(self.cutoff),
            include_as_printed_eq10: other.include_as_printed_eq10.or(self.include_as_printed_eq10),
            out: other.out.or(self.out),
            svg: other.svg.or(self.svg),
        }
    }

    pub fn params(&self) -> Result<ModelParams, CliError> {
        let omega = self.omega.unwrap_or(DEFAULT_OMEGA);
        let delta = required(self.delta, "delta")?;
        let g = required(self.g, "g")?;
        let c = required(self.c, "c")?;
        Ok(ModelParams::new(omega, delta, g, c)?)
    }

    pub fn window(&self) -> Result<Window, CliError> {
        let lo = self.window_lo.unwrap_or(DEFAULT_WINDOW.0);
        let hi = self.window_hi.unwrap_or(DEFAULT_WINDOW.1);
        Ok(Window::new(lo, hi)?)
    }

    pub fn rel_tol(&self) -> Result<f64, CliError> {
        let r = self.rel_tol.unwrap_or(DEFAULT_REL_TOL);
        if r > 0.0 && r <= 1e-2 {
            Ok(r)
        } else {
            Err(CliError::Input(format!("--rel-tol must lie in (0, 1e-2], got {r}")))
        }
    }

    pub fn t_max(&self) -> Result<f64, CliError> {
        let t = required(self.t_max, "t-max")?;
        if t.is_finite() && t > 0.0 {
            Ok(t)
        } else {
            Err(CliError::Input(format!("--t-max must be positive, got {t}")))
        }
    }

    /// Explicit `--points`, or enough points for a grid step of at most
    /// `pi / (10 max(a, b, f))`.
    pub fn points(&self, params: &ModelParams, t_max: f64) -> Result<usize, CliError> {
        match self.points {
            Some(n) if n >= 2 => Ok(n),
            Some(n) => Err(CliError::Input(format!("--points must be at least 2, got {n}"))),
            None => Ok(match scan_step(params) {
                Some(step) => (t_max / step).ceil() as usize + 1,
                None => FALLBACK_POINTS,
            }),
        }
    }

    pub fn time(&self) -> Result<Option<f64>, CliError> {
        match self.time {
            Some(t) if !t.is_finite() || t < 0.0 => {
                Err(CliError::Input(format!("--time must be finite and non-negative, got {t}")))
            }
            t => Ok(t),
        }
    }

    /// `--alpha` is required; `mu` defaults to 1 and `nu` to 0.
    pub fn qubit(&self) -> Result<CoherentQubit, CliError> {
        let alpha = required(self.alpha, "alpha")?;
        let parts = [alpha, self.mu_re.unwrap_or(1.0), self.mu_im.unwrap_or(0.0)];
        let nu = [self.nu_re.unwrap_or(0.0), self.nu_im.unwrap_or(0.0)];
        if parts.iter().chain(&nu).any(|x| !x.is_finite()) {
            return Err(CliError::Input("qubit amplitudes must be finite".into()));
        }
        let q = CoherentQubit::new(
            Complex64::new(alpha, 0.0),
            Complex64::new(parts[1], parts[2]),
            Complex64::new(nu[0], nu[1]),
        );
        qubit_normalization(&q)?;
        Ok(q)
    }

    pub fn pop_cap(&self) -> Result<f64, CliError> {
        let cap = required(self.pop_cap, "pop-cap")?;
        if cap > 0.0 && cap <= 1.0 {
            Ok(cap)
        } else {
            Err(CliError::Input(format!("--pop-cap must lie in (0, 1], got {cap}")))
        }
    }

    /// `from, from + step, ...` up to `to` inclusive. A single point when
    /// `from == to`, in which case the step may be omitted.
    pub fn delta_grid(&self) -> Result<Vec<f64>, CliError> {
        let from = required(self.delta_from, "delta-from")?;
        let to = required(self.delta_to, "delta-to")?;
        if !(from.is_finite() && to.is_finite()) || to < from {
            return Err(CliError::Input(format!("invalid detuning range [{from}, {to}]")));
        }
        if from == to {
            return Ok(vec![from]);
        }
        let step = required(self.delta_step, "delta-step")?;
        if !(step.is_finite() && step > 0.0) {
            return Err(CliError::Input(format!("--delta-step must be positive, got {step}")));
        }
        let n = ((to - from) / step + 1e-9).floor() as usize + 1;
        Ok((0..n).map(|k| from + k as f64 * step).collect())
    }

    /// Sweep parameters only need `g` and `c`; frequencies are relative to
    /// `omega = 1`.
    pub fn couplings(&self) -> Result<(f64, f64), CliError> {
        let g = required(self.g, "g")?;
        let c = required(self.c, "c")?;
        ModelParams::with_unit_omega(0.0, g, c)?;
        Ok((g, c))
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Input(format!("missing required setting --{flag}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::rabi_frequencies;

    #[test]
    fn parses_config_file() {
        let cfg = RunConfig::from_config_str("# resonant\ndelta = 0\ng=65\n c = 1 # hopping\nt_max = 5\n\nseed = 7\n")
            .unwrap();
        assert_eq!(cfg.delta, Some(0.0));
        assert_eq!(cfg.g, Some(65.0));
        assert_eq!(cfg.c, Some(1.0));
        assert_eq!(cfg.t_max, Some(5.0));
        assert_eq!(cfg.seed, Some(7));
    }

    #[test]
    fn unknown_key_is_error() {
        let err = RunConfig::from_config_str("detla = 3\n").unwrap_err();
        assert!(err.to_string().contains("unknown key `detla`"));
    }

    #[test]
    fn every_listed_key_is_accepted() {
        for key in CONFIG_KEYS {
            let value = if *key == "include-as-printed-eq10" { "true" } else { "1" };
            RunConfig::from_config_str(&format!("{key} = {value}")).unwrap();
        }
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig::from_config_str("delta = 3\ng = 1").unwrap();
        let flags = RunConfig {
            delta: Some(-5.0),
            ..Default::default()
        };
        let merged = file.overlay(flags);
        assert_eq!(merged.delta, Some(-5.0));
        assert_eq!(merged.g, Some(1.0));
    }

    #[test]
    fn delta_grid_endpoints() {
        let cfg = RunConfig {
            delta_from: Some(-800.0),
            delta_to: Some(-400.0),
            delta_step: Some(50.0),
            ..Default::default()
        };
        let grid = cfg.delta_grid().unwrap();
        assert_eq!(grid.len(), 9);
        assert_eq!(grid[4], -600.0);
        assert_eq!(*grid.last().unwrap(), -400.0);

        let single = RunConfig {
            delta_from: Some(0.0),
            delta_to: Some(0.0),
            ..Default::default()
        };
        assert_eq!(single.delta_grid().unwrap(), vec![0.0]);
    }

    #[test]
    fn default_points_resolve_fastest_block() {
        let cfg = RunConfig::default();
        let p = ModelParams::with_unit_omega(0.0, 65.0, 1.0).unwrap();
        let n = cfg.points(&p, 5.0).unwrap();
        let step = 5.0 / (n - 1) as f64;
        assert!(step <= std::f64::consts::PI / (10.0 * rabi_frequencies(&p).max()));
    }

    #[test]
    fn degenerate_qubit_rejected() {
        let cfg = RunConfig {
            alpha: Some(0.0),
            mu_re: Some(1.0),
            nu_re: Some(-1.0),
            ..Default::default()
        };
        assert!(matches!(cfg.qubit(), Err(CliError::Input(_))));
    }
}
