use serde::Serialize;

use super::exact::check_n;
use super::{DensityKind, SpectrumTarget};
use crate::enumerate::{for_each_input, map_outputs};
use crate::error::Result;
use crate::logspace::{pairwise_sum, DEFAULT_ENUMERATION_BUDGET};

/// Exhaustive check of `P_{Y^n}(B^c) ≤ √ε_n`.
///
/// `A(y^n)` holds the inputs whose density is on the good side of `t`
/// (`≥ t` for information densities, `≤ t` for entropy densities) and
/// `B = {y^n : P(A(y^n)^c | y^n) < √ε_n}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProofSetReport {
    pub epsilon: f64,
    pub mass_b_complement: f64,
    pub bound_sqrt_epsilon: f64,
    pub holds: bool,
}

pub fn proof_set_diagnostic<'a>(
    target: impl Into<SpectrumTarget<'a>>,
    n: usize,
    t: f64,
) -> Result<ProofSetReport> {
    let target = target.into();
    check_n(n)?;
    let joint = target.joint();
    let nx = joint.alphabets().0.size();
    let kind = target.kind();
    // (P(y^n), P(A(y^n)^c, y^n)) per output sequence
    let rows = map_outputs(joint, n, DEFAULT_ENUMERATION_BUDGET, |ys, ln_py| {
        let mut bad = Vec::new();
        for_each_input(nx, n, |xs| {
            let ln_p = joint.log_prob_unchecked(xs, ys);
            if ln_p > f64::NEG_INFINITY {
                let d = target.scaled_density(xs, ys, ln_p, ln_py) / n as f64;
                let outside_a = match kind {
                    DensityKind::Information => !(d >= t),
                    DensityKind::Entropy => !(d <= t),
                };
                if outside_a {
                    bad.push(ln_p.exp());
                }
            }
        });
        (ln_py.exp(), pairwise_sum(&bad))
    })?;

    let epsilon = pairwise_sum(&rows.iter().map(|r| r.1).collect::<Vec<_>>()).clamp(0.0, 1.0);
    let sqrt_eps = epsilon.sqrt();
    if epsilon == 0.0 {
        return Ok(ProofSetReport {
            epsilon,
            mass_b_complement: 0.0,
            bound_sqrt_epsilon: 0.0,
            holds: true,
        });
    }
    let outside_b: Vec<f64> = rows
        .iter()
        .filter(|(py, bad)| !(bad / py < sqrt_eps))
        .map(|r| r.0)
        .collect();
    let mass = pairwise_sum(&outside_b);
    Ok(ProofSetReport {
        epsilon,
        mass_b_complement: mass,
        bound_sqrt_epsilon: sqrt_eps,
        holds: mass <= sqrt_eps + 1e-12,
    })
}
