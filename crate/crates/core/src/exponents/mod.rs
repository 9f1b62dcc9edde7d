//! Gallager functions at finite blocklength and the bounds built on them.
//!
//! For an input `X^n` and channel `W^n`,
//!
//! ```text
//! E0(ρ) = -(1/n) ln Σ_y ( Σ_x P(x) W(y|x)^{1/(1+ρ)} )^{1+ρ}
//! ```
//!
//! and for correlated sources `X^n Y^n`,
//!
//! ```text
//! J0(ρ) = (1/n) ln Σ_y ( Σ_x P(x, y)^{1/(1+ρ)} )^{1+ρ}
//! ```
//!
//! with `0 ≤ ρ ≤ 1`. Memoryless models factor per letter; everything else is
//! summed exhaustively in the log domain.

mod gallager;
mod optimize;
mod theorems;
mod tilted;

pub use gallager::{gallager_e0, gallager_e0_enumerated, source_j0, source_j0_enumerated};
pub use optimize::{
    channel_exponent, channel_exponent_curve, e0_curve, j0_curve, maximize_unimodal,
    optimize_iid_input, source_exponent, source_exponent_curve, ExponentPoint, InputSearch,
    DEFAULT_RHO_GRID, GOLDEN_WIDTH,
};
pub use theorems::{
    rho_n_channel, rho_n_source, verify_theorem1, verify_theorem2, BoundReport, HOLDS_TOLERANCE,
};
pub use tilted::{j0_derivative, solve_rho0, tilted_joint, TiltedJoint};

use serde::Serialize;

use crate::error::{Error, Result};

/// How far outside `[0, 1]` a `ρ` may stray and still be clamped.
const RHO_CLAMP_SLACK: f64 = 1e-9;

/// The Gallager parameter, `0 ≤ ρ ≤ 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Rho(f64);

impl Rho {
    pub const ZERO: Rho = Rho(0.0);
    pub const ONE: Rho = Rho(1.0);

    /// Values within `1e-9` of the interval (such as `-0.0` or `1 + 1e-16`)
    /// are clamped with a warning; anything further out is an input error.
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            return Ok(Self(value.max(0.0)));
        }
        if value.is_finite() && value > -RHO_CLAMP_SLACK && value < 1.0 + RHO_CLAMP_SLACK {
            log::warn!("rho = {value:e} clamped to [0, 1]");
            return Ok(Self(value.clamp(0.0, 1.0)));
        }
        Err(Error::Input(format!("rho = {value} is outside [0, 1]")))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A rate or threshold in nats per symbol.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Rate(f64);

impl Rate {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(Self(value.max(0.0)))
        } else {
            Err(Error::Input(format!("rate {value} must be finite and nonnegative")))
        }
    }

    pub fn from_bits(bits: f64) -> Result<Self> {
        Self::new(bits * std::f64::consts::LN_2)
    }

    #[inline]
    pub fn nats(self) -> f64 {
        self.0
    }
}

/// Sampled `(parameter, exponent)` pairs in nats.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentCurve {
    pub model_id: String,
    pub n: usize,
    pub points: Vec<(f64, f64)>,
}

impl ExponentCurve {
    pub fn with_model_id(mut self, id: impl Into<String>) -> Self {
        self.model_id = id.into();
        self
    }
}

pub(crate) fn check_increasing(values: &[f64], what: &str) -> Result<()> {
    if values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Input(format!("{what} grid must be strictly increasing")));
    }
    Ok(())
}
