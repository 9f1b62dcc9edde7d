//! Monte Carlo checks of the exponents: random channel codes under ML
//! decoding, and random binning of a correlated source under MAP decoding.
//!
//! Every draw comes from a stream keyed by `(seed, outer index, inner index)`,
//! and errors are counted as integers, so a result does not depend on how
//! many workers produced it.

mod channel;
mod slepian_wolf;

pub use channel::{simulate_channel_code, ChannelSimConfig};
pub use slepian_wolf::{bin_hash, simulate_slepian_wolf, SlepianWolfConfig};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::hoeffding_halfwidth;

/// Decoding metrics closer than this (nats, unnormalized) count as tied.
///
/// Equal likelihoods summed in different orders can differ in the last bit.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Outcome of one simulation, with probabilities in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub empirical_error: f64,
    pub errors: u64,
    pub trials: u64,
    /// 99% Hoeffding half-width for `empirical_error`.
    pub ci_halfwidth: f64,
    /// `exp(-n E(R))` for channels, `exp(-n J(R))` for sources.
    pub analytic_bound: f64,
    pub exponent: f64,
    pub rho: f64,
    /// Messages `M` for a channel code, bins for a binning code.
    pub codewords: u64,
    pub bound_satisfied_within_ci: bool,
}

impl SimResult {
    fn new(errors: u64, trials: u64, exponent: f64, rho: f64, n: usize, codewords: u64) -> Self {
        let empirical_error = errors as f64 / trials as f64;
        let ci_halfwidth = hoeffding_halfwidth(trials as usize);
        let analytic_bound = (-(n as f64) * exponent).exp();
        Self {
            empirical_error,
            errors,
            trials,
            ci_halfwidth,
            analytic_bound,
            exponent,
            rho,
            codewords,
            bound_satisfied_within_ci: empirical_error <= analytic_bound + ci_halfwidth,
        }
    }
}

/// `⌈exp(nR)⌉`, with a little slack so that `nR = ln k` gives exactly `k`.
pub(crate) fn code_size(n: usize, rate: f64, limit: u128) -> Result<u64> {
    let target = (n as f64 * rate).exp();
    let size = (target - 1e-9).ceil().max(1.0);
    if !size.is_finite() || size > limit as f64 {
        return Err(Error::Capacity {
            needed: if size.is_finite() { size as u128 } else { u128::MAX },
            budget: limit,
        });
    }
    Ok(size as u64)
}

/// Picks the decoded index among `metrics`, breaking ties uniformly.
pub(crate) fn argmax_random_tie<R: Rng + ?Sized>(metrics: &[f64], rng: &mut R) -> usize {
    let best = metrics.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<usize> = (0..metrics.len())
        .filter(|&i| metrics[i] >= best - TIE_TOLERANCE)
        .collect();
    if tied.len() == 1 {
        tied[0]
    } else {
        tied[rng.random_range(0..tied.len())]
    }
}

pub(crate) fn check_counts(n: usize, pairs: &[(&str, u64)]) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("blocklength must be at least 1".into()));
    }
    for (name, v) in pairs {
        if *v == 0 {
            return Err(Error::Input(format!("{name} must be at least 1")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    #[test]
    fn code_sizes() {
        assert_eq!(code_size(4, 0.3, 1 << 24).unwrap(), 4);
        assert_eq!(code_size(16, 0.1, 1 << 24).unwrap(), 5);
        assert_eq!(code_size(2, 4f64.ln() / 2.0, 1 << 24).unwrap(), 4);
        assert_eq!(code_size(3, 0.0, 1 << 24).unwrap(), 1);
        assert!(matches!(code_size(100, 1.0, 1 << 24), Err(Error::Capacity { .. })));
    }

    #[test]
    fn ties_split_evenly() {
        let mut rng = stream_rng(1, 99, 0, 0);
        let metrics = [-1.0, -0.5, -0.5 + 1e-12, -3.0];
        let mut hits = [0u32; 4];
        for _ in 0..4000 {
            hits[argmax_random_tie(&metrics, &mut rng)] += 1;
        }
        assert_eq!(hits[0] + hits[3], 0);
        assert!((1800..2200).contains(&hits[1]));
    }
}
