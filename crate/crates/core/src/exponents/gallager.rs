use super::Rho;
use crate::enumerate::{for_each_input, map_outputs};
use crate::error::{Error, Result};
use crate::logspace::{log_sum_exp, DEFAULT_ENUMERATION_BUDGET};
use crate::models::{Family, InputChannel, JointPmf, JointSourceModel, Pmf, Stochastic};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Input("blocklength must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Single-letter `-ln Σ_y (Σ_x p(x) W(y|x)^{1/(1+ρ)})^{1+ρ}`.
pub(crate) fn e0_letter(p: &Pmf, w: &Stochastic, rho: f64) -> f64 {
    let s = 1.0 / (1.0 + rho);
    let mut terms = vec![0.0; p.len()];
    let outer: Vec<f64> = (0..w.outputs())
        .map(|y| {
            for (x, t) in terms.iter_mut().enumerate() {
                *t = p.ln(x) + s * w.ln(x, y);
            }
            (1.0 + rho) * log_sum_exp(&terms)
        })
        .collect();
    -log_sum_exp(&outer)
}

/// Single-letter `ln Σ_y (Σ_x p(x, y)^{1/(1+ρ)})^{1+ρ}`.
pub(crate) fn j0_letter(p: &JointPmf, rho: f64) -> f64 {
    let s = 1.0 / (1.0 + rho);
    let mut terms = vec![0.0; p.nx()];
    let outer: Vec<f64> = (0..p.ny())
        .map(|y| {
            for (x, t) in terms.iter_mut().enumerate() {
                *t = s * p.ln(x, y);
            }
            (1.0 + rho) * log_sum_exp(&terms)
        })
        .collect();
    log_sum_exp(&outer)
}

/// Average of `f(i)` over positions `0..n`, evaluating each periodic position once.
fn positional_mean(n: usize, period: usize, f: impl Fn(usize) -> f64) -> f64 {
    let distinct = period.min(n);
    let per: Vec<f64> = (0..distinct).map(&f).collect();
    let total: f64 = (0..n).map(|i| per[i % distinct]).sum();
    total / n as f64
}

fn memoryless_period(joint: &JointSourceModel) -> Option<usize> {
    match joint {
        JointSourceModel::Memoryless { positions, .. } => Some(positions.len()),
        _ => None,
    }
}

/// `E0^{(n)}(ρ, X)` in nats per symbol.
///
/// Memoryless inputs through memoryless channels use the per-letter average;
/// other models are enumerated.
pub fn gallager_e0(pair: &InputChannel, n: usize, rho: Rho) -> Result<f64> {
    check_n(n)?;
    if rho == Rho::ZERO {
        // Exactly zero for any normalized model; summing would leave rounding residue.
        return Ok(0.0);
    }
    if pair.input().family() == Family::Memoryless && pair.channel().family() == Family::Memoryless {
        let period = memoryless_period(pair.joint()).expect("memoryless pair");
        let r = rho.value();
        return Ok(positional_mean(n, period, |i| {
            e0_letter(
                pair.input().position(i).expect("memoryless"),
                pair.channel().position(i).expect("memoryless"),
                r,
            )
        }));
    }
    gallager_e0_enumerated(pair, n, rho)
}

/// `E0^{(n)}` by summing over every `(x^n, y^n)`.
pub fn gallager_e0_enumerated(pair: &InputChannel, n: usize, rho: Rho) -> Result<f64> {
    check_n(n)?;
    let r = rho.value();
    let s = 1.0 / (1.0 + r);
    let nx = pair.input().alphabet().size();
    let outer = map_outputs(pair.joint(), n, DEFAULT_ENUMERATION_BUDGET, |ys, _| {
        let mut terms = Vec::new();
        for_each_input(nx, n, |xs| {
            let lp = pair.input().log_prob_unchecked(xs);
            if lp > f64::NEG_INFINITY {
                terms.push(lp + s * pair.channel().log_prob_unchecked(xs, ys));
            }
        });
        (1.0 + r) * log_sum_exp(&terms)
    })?;
    Ok(-log_sum_exp(&outer) / n as f64)
}

/// `J0^{(n)}(ρ)` in nats per symbol.
pub fn source_j0(joint: &JointSourceModel, n: usize, rho: Rho) -> Result<f64> {
    check_n(n)?;
    if rho == Rho::ZERO {
        return Ok(0.0);
    }
    if let Some(period) = memoryless_period(joint) {
        let r = rho.value();
        return Ok(positional_mean(n, period, |i| {
            j0_letter(joint.position(i).expect("memoryless"), r)
        }));
    }
    source_j0_enumerated(joint, n, rho)
}

/// `J0^{(n)}` by summing over every `(x^n, y^n)`.
pub fn source_j0_enumerated(joint: &JointSourceModel, n: usize, rho: Rho) -> Result<f64> {
    check_n(n)?;
    let r = rho.value();
    let s = 1.0 / (1.0 + r);
    let nx = joint.alphabets().0.size();
    let outer = map_outputs(joint, n, DEFAULT_ENUMERATION_BUDGET, |ys, _| {
        let mut terms = Vec::new();
        for_each_input(nx, n, |xs| {
            terms.push(s * joint.log_prob_unchecked(xs, ys));
        });
        (1.0 + r) * log_sum_exp(&terms)
    })?;
    Ok(log_sum_exp(&outer) / n as f64)
}
