//! The finite-`n` exponent bounds for general channels and correlated sources.
//!
//! Both take a threshold `t` in place of "limit rate ∓ δ": the bounds hold for
//! every positive threshold, and the limit rates are rarely computable.

use std::f64::consts::LN_2;

use serde::Serialize;

use super::{gallager_e0, source_j0, Rate, Rho};
use crate::error::{Error, Result};
use crate::models::{InputChannel, JointSourceModel};
use crate::spectrum::{epsilon_at, exact_spectrum, Tail};

/// A report holds when its slack is at least `-HOLDS_TOLERANCE`.
pub const HOLDS_TOLERANCE: f64 = 1e-12;

/// All quantities of one bound evaluation, in nats per symbol.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub threshold: f64,
    pub epsilon_n: f64,
    pub rho_n: Rho,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

/// `ρ_n = min{-½ ln ε / (n t), 1}`, with `ρ_n = 1` at `ε = 0`.
pub fn rho_n_channel(t: Rate, epsilon: f64, n: usize) -> Result<Rho> {
    if !(t.nats() > 0.0) {
        return Err(Error::Input("threshold must be positive".into()));
    }
    check_epsilon(epsilon, n)?;
    if epsilon == 0.0 {
        return Ok(Rho::ONE);
    }
    Rho::new((-0.5 * epsilon.ln() / (n as f64 * t.nats())).min(1.0))
}

/// `ρ_n = min{-½ ln ε / (n (ln|X| - t)), 1}`, or 1 once `t ≥ ln|X|` or `ε = 0`.
pub fn rho_n_source(t: Rate, epsilon: f64, n: usize, ln_alphabet: f64) -> Result<Rho> {
    if !(ln_alphabet > 0.0) {
        return Err(Error::Input("ln|X| must be positive".into()));
    }
    check_epsilon(epsilon, n)?;
    if t.nats() >= ln_alphabet || epsilon == 0.0 {
        return Ok(Rho::ONE);
    }
    Rho::new((-0.5 * epsilon.ln() / (n as f64 * (ln_alphabet - t.nats()))).min(1.0))
}

fn check_epsilon(epsilon: f64, n: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Input(format!("epsilon {epsilon} is not a probability")));
    }
    if n == 0 {
        return Err(Error::Input("blocklength must be at least 1".into()));
    }
    Ok(())
}

/// Checks `E0(ρ_n) ≥ ρ_n t - 3 ln 2 / n` with `ε_n = Pr{density < t}`.
pub fn verify_theorem1(pair: &InputChannel, n: usize, t: Rate) -> Result<BoundReport> {
    let spectrum = exact_spectrum(pair, n)?;
    let epsilon = epsilon_at(&spectrum, t.nats(), Tail::BelowStrict)?.epsilon;
    let rho = rho_n_channel(t, epsilon, n)?;
    let lhs = gallager_e0(pair, n, rho)?;
    let rhs = rho.value() * t.nats() - 3.0 * LN_2 / n as f64;
    let slack = lhs - rhs;
    Ok(BoundReport {
        n,
        threshold: t.nats(),
        epsilon_n: epsilon,
        rho_n: rho,
        lhs,
        rhs,
        slack,
        holds: slack >= -HOLDS_TOLERANCE,
    })
}

/// Checks `J0(ρ_n) ≤ ρ_n t + 3 ln 2 / n` with `ε_n = Pr{density > t}`.
pub fn verify_theorem2(joint: &JointSourceModel, n: usize, t: Rate) -> Result<BoundReport> {
    let ln_x = joint.alphabets().0.ln_size();
    if !(ln_x > 0.0) {
        return Err(Error::Input("the bound needs |X| ≥ 2".into()));
    }
    let spectrum = exact_spectrum(joint, n)?;
    let epsilon = epsilon_at(&spectrum, t.nats(), Tail::AboveStrict)?.epsilon;
    let rho = rho_n_source(t, epsilon, n, ln_x)?;
    let lhs = source_j0(joint, n, rho)?;
    let rhs = rho.value() * t.nats() + 3.0 * LN_2 / n as f64;
    let slack = rhs - lhs;
    Ok(BoundReport {
        n,
        threshold: t.nats(),
        epsilon_n: epsilon,
        rho_n: rho,
        lhs,
        rhs,
        slack,
        holds: slack >= -HOLDS_TOLERANCE,
    })
}
