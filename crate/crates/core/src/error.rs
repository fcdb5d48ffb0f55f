use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate qubit: normalization {norm:e} is below {threshold:e}")]
    DegenerateQubit { norm: f64, threshold: f64 },

    #[error("coefficient row is not normalized (sum of squared moduli = {sum})")]
    NotNormalized { sum: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid window [{lo}, {hi}]")]
    InvalidWindow { lo: f64, hi: f64 },

    #[error("Fock cutoff {cutoff} gives dimension {dim}, above the budget of {budget}")]
    InfeasibleCutoff { cutoff: usize, dim: usize, budget: usize },

    #[error("Poisson tail {tail:e} beyond cutoff {cutoff} exceeds {limit:e}; minimal adequate cutoff is {min_cutoff}")]
    TailTooLarge {
        cutoff: usize,
        tail: f64,
        limit: f64,
        min_cutoff: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("evolution error bound {bound:e} exceeds {limit:e}")]
    EvolutionAccuracy { bound: f64, limit: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite, got {value}")))
    }
}
