//! Model parameters and the fixed mode ordering shared by every matrix and
//! coefficient vector in the crate.

use std::fmt;

use crate::error::{ensure_finite, Error, Result};

/// Number of bosonic modes in the three-site chain.
pub const N_MODES: usize = 6;

/// Frequencies and couplings of the three-cavity, three-dot chain, in units
/// of the cavity frequency (`hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Cavity field frequency.
    pub omega: f64,
    /// Exciton-cavity detuning; the exciton frequency is `omega - delta`.
    pub delta: f64,
    /// Dot-cavity coupling.
    pub g: f64,
    /// Photon hopping between neighbouring cavities.
    pub c: f64,
}

impl ModelParams {
    /// Validated constructor. `g` and `c` must be nonnegative (their signs can
    /// always be absorbed into mode phases) and all fields finite.
    pub fn new(omega: f64, delta: f64, g: f64, c: f64) -> Result<Self> {
        let p = ModelParams { omega, delta, g, c };
        p.validate()?;
        Ok(p)
    }

    /// Same as [`ModelParams::new`] with `omega = 1`.
    pub fn with_unit_omega(delta: f64, g: f64, c: f64) -> Result<Self> {
        Self::new(1.0, delta, g, c)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("omega", self.omega)?;
        ensure_finite("delta", self.delta)?;
        ensure_finite("g", self.g)?;
        ensure_finite("c", self.c)?;
        if self.g < 0.0 {
            return Err(Error::param("g", format!("must be >= 0, got {}", self.g)));
        }
        if self.c < 0.0 {
            return Err(Error::param("c", format!("must be >= 0, got {}", self.c)));
        }
        Ok(())
    }

    /// Exciton frequency `omega - delta`.
    pub fn exciton_frequency(&self) -> f64 {
        self.omega - self.delta
    }
}

/// The six modes in their frozen order `(a1, b1, a2, b2, a3, b3)`: cavity
/// field `a_i` followed by the exciton `b_i` of the same site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum ModeIndex {
    A1 = 0,
    B1 = 1,
    A2 = 2,
    B2 = 3,
    A3 = 4,
    B3 = 5,
}

impl ModeIndex {
    pub const ALL: [ModeIndex; N_MODES] = [
        ModeIndex::A1,
        ModeIndex::B1,
        ModeIndex::A2,
        ModeIndex::B2,
        ModeIndex::A3,
        ModeIndex::B3,
    ];

    pub const CAVITIES: [ModeIndex; 3] = [ModeIndex::A1, ModeIndex::A2, ModeIndex::A3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Site number, 0-based.
    pub fn site(self) -> usize {
        self.index() / 2
    }

    pub fn is_cavity(self) -> bool {
        self.index().is_multiple_of(2)
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeIndex::A1 => "a1",
            ModeIndex::B1 => "b1",
            ModeIndex::A2 => "a2",
            ModeIndex::B2 => "b2",
            ModeIndex::A3 => "a3",
            ModeIndex::B3 => "b3",
        }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_couplings() {
        assert!(ModelParams::new(1.0, 0.0, -1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 0.0, 1.0, -0.5).is_err());
        assert!(ModelParams::new(1.0, -600.0, 65.0, 1.0).is_ok());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(ModelParams::new(f64::NAN, 0.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, f64::INFINITY, 1.0, 1.0).is_err());
    }

    #[test]
    fn mode_order_is_frozen() {
        let names: Vec<_> = ModeIndex::ALL.iter().map(|m| m.name()).collect();
        assert_eq!(names, ["a1", "b1", "a2", "b2", "a3", "b3"]);
        assert_eq!(ModeIndex::B3.site(), 2);
        assert!(ModeIndex::A2.is_cavity());
        assert!(!ModeIndex::B1.is_cavity());
        assert_eq!(ModeIndex::from_index(5), Some(ModeIndex::B3));
        assert_eq!(ModeIndex::from_index(6), None);
    }
}
