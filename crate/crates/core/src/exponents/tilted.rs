//! The tilted joint law `P̄_ρ` and the inverse problem `dJ0/dρ = R`.
//!
//! ```text
//! P̄(x, y) = P(x, y)^{1/(1+ρ)} (Σ_x̂ P(x̂, y)^{1/(1+ρ)})^ρ / exp(n J0(ρ))
//! ```
//!
//! Its conditional entropy per symbol is the slope of `J0` at `ρ`.

use super::{Rate, Rho};
use crate::enumerate::{for_each_input, map_outputs};
use crate::error::{Error, Result};
use crate::logspace::{
    check_pair_budget, log_sum_exp, neg_plogp, sequence_count, unrank, DEFAULT_ENUMERATION_BUDGET,
};
use crate::models::{JointPmf, JointSourceModel};
use crate::parallel::ordered_map;

/// Bisection stops once `|dJ0/dρ - R|` is below this.
const SOLVE_TOLERANCE: f64 = 1e-10;
const SOLVE_MAX_ITERATIONS: usize = 200;

/// `P̄_ρ` on `X^n × Y^n`.
#[derive(Clone, Debug)]
pub enum TiltedJoint {
    /// Memoryless joints tilt letter by letter; `positions` repeat periodically.
    Factored {
        n: usize,
        positions: Vec<JointPmf>,
        log_normalizer: f64,
    },
    /// Every other family: `log_mass[rank(y) * |X|^n + rank(x)]`.
    Table {
        n: usize,
        nx: usize,
        ny: usize,
        log_mass: Vec<f64>,
        log_normalizer: f64,
        conditional_entropy: f64,
    },
}

impl TiltedJoint {
    pub fn n(&self) -> usize {
        match self {
            TiltedJoint::Factored { n, .. } | TiltedJoint::Table { n, .. } => *n,
        }
    }

    /// `ln P̄(x^n, y^n)`.
    pub fn log_mass(&self, xs: &[usize], ys: &[usize]) -> f64 {
        match self {
            TiltedJoint::Factored { positions, .. } => xs
                .iter()
                .zip(ys)
                .enumerate()
                .map(|(i, (&x, &y))| positions[i % positions.len()].ln(x, y))
                .sum(),
            TiltedJoint::Table { n, nx, ny, log_mass, .. } => {
                let block = sequence_count(*nx, *n).expect("table fits") as u64;
                let ry = crate::logspace::rank(ys, *ny);
                let rx = crate::logspace::rank(xs, *nx);
                log_mass[(ry * block + rx) as usize]
            }
        }
    }

    /// `Σ P̄`, which should be 1 up to rounding.
    pub fn total_mass(&self) -> f64 {
        match self {
            TiltedJoint::Factored { n, positions, .. } => (0..*n)
                .map(|i| positions[i % positions.len()].cells().probs().iter().sum::<f64>())
                .product(),
            TiltedJoint::Table { log_mass, .. } => log_sum_exp(log_mass).exp(),
        }
    }

    /// `H(X̄^n | Ȳ^n)` in nats, for the whole block.
    pub fn conditional_entropy(&self) -> f64 {
        match self {
            TiltedJoint::Factored { n, positions, .. } => {
                (0..*n).map(|i| letter_conditional_entropy(&positions[i % positions.len()])).sum()
            }
            TiltedJoint::Table { conditional_entropy, .. } => *conditional_entropy,
        }
    }

    /// `ln Σ_y (Σ_x P^{1/(1+ρ)})^{1+ρ}`, which equals `n J0(ρ)`.
    pub fn log_normalizer(&self) -> f64 {
        match self {
            TiltedJoint::Factored { log_normalizer, .. } | TiltedJoint::Table { log_normalizer, .. } => {
                *log_normalizer
            }
        }
    }
}

/// `Σ_y P(y) H(X | Y = y)` computed from the conditionals directly, which is
/// more accurate than `H(XY) - H(Y)` when the tilted law is nearly degenerate.
fn letter_conditional_entropy(p: &JointPmf) -> f64 {
    let mut total = 0.0;
    let mut column = vec![0.0; p.nx()];
    for y in 0..p.ny() {
        let ln_py = p.marginal_y().ln(y);
        if ln_py == f64::NEG_INFINITY {
            continue;
        }
        for (x, c) in column.iter_mut().enumerate() {
            *c = neg_plogp(p.ln(x, y) - ln_py);
        }
        total += p.marginal_y().prob(y) * column.iter().sum::<f64>();
    }
    total
}

/// Tilts one letter; returns the tilted pmf and its log normalizer.
fn tilt_letter(p: &JointPmf, rho: f64) -> (JointPmf, f64) {
    let s = 1.0 / (1.0 + rho);
    let (nx, ny) = (p.nx(), p.ny());
    let mut logs = vec![f64::NEG_INFINITY; nx * ny];
    let mut column = vec![0.0; nx];
    for y in 0..ny {
        for (x, c) in column.iter_mut().enumerate() {
            *c = s * p.ln(x, y);
        }
        let ln_g = log_sum_exp(&column);
        if ln_g == f64::NEG_INFINITY {
            continue;
        }
        for x in 0..nx {
            logs[x * ny + y] = column[x] + rho * ln_g;
        }
    }
    let ln_z = log_sum_exp(&logs);
    let cells = logs.iter().map(|l| (l - ln_z).exp()).collect();
    (JointPmf::from_cells(nx, ny, cells), ln_z)
}

/// Per output sequence: `(1+ρ) ln g(y)` and `H(X̄ | Ȳ = y)`, where
/// `g(y) = Σ_x P(x, y)^{1/(1+ρ)}`.
fn output_slice(terms: &[f64], rho: f64) -> (f64, f64) {
    let ln_g = log_sum_exp(terms);
    let h = terms.iter().map(|t| neg_plogp(t - ln_g)).sum();
    ((1.0 + rho) * ln_g, h)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Input("blocklength must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Builds `P̄_ρ`. Non-memoryless joints materialize the full table, so they
/// share the enumeration budget.
pub fn tilted_joint(joint: &JointSourceModel, n: usize, rho: Rho) -> Result<TiltedJoint> {
    check_n(n)?;
    let r = rho.value();
    if let JointSourceModel::Memoryless { positions, .. } = joint {
        let tilted: Vec<(JointPmf, f64)> = positions.iter().map(|p| tilt_letter(p, r)).collect();
        let log_normalizer = (0..n).map(|i| tilted[i % tilted.len()].1).sum();
        return Ok(TiltedJoint::Factored {
            n,
            positions: tilted.into_iter().map(|t| t.0).collect(),
            log_normalizer,
        });
    }
    let (ax, ay) = joint.alphabets();
    let (nx, ny) = (ax.size(), ay.size());
    check_pair_budget(nx, ny, n, DEFAULT_ENUMERATION_BUDGET)?;
    let s = 1.0 / (1.0 + r);
    let outputs = sequence_count(ny, n).expect("checked by budget") as u64;
    let slices = ordered_map(outputs, |ry| {
        let mut ys = vec![0; n];
        unrank(ry, ny, &mut ys);
        let mut terms = Vec::new();
        for_each_input(nx, n, |xs| terms.push(s * joint.log_prob_unchecked(xs, &ys)));
        let (weight, h) = output_slice(&terms, r);
        (terms, weight, h)
    });
    let weights: Vec<f64> = slices.iter().map(|s| s.1).collect();
    let log_normalizer = log_sum_exp(&weights);
    let entropies: Vec<f64> = slices
        .iter()
        .filter(|s| s.1 > f64::NEG_INFINITY)
        .map(|s| (s.1 - log_normalizer).exp() * s.2)
        .collect();
    let conditional_entropy = crate::logspace::pairwise_sum(&entropies);
    let mut log_mass = Vec::with_capacity(slices.iter().map(|s| s.0.len()).sum());
    for (terms, weight, _) in slices {
        let ln_g = weight / (1.0 + r);
        for t in terms {
            log_mass.push(if ln_g == f64::NEG_INFINITY {
                f64::NEG_INFINITY
            } else {
                t + r * ln_g - log_normalizer
            });
        }
    }
    Ok(TiltedJoint::Table {
        n,
        nx,
        ny,
        log_mass,
        log_normalizer,
        conditional_entropy,
    })
}

/// `dJ0/dρ = H(X̄^n | Ȳ^n) / n` in nats per symbol.
///
/// Unlike [`tilted_joint`], the enumerated path streams over outputs and
/// never stores the full table.
pub fn j0_derivative(joint: &JointSourceModel, n: usize, rho: Rho) -> Result<f64> {
    check_n(n)?;
    let r = rho.value();
    if let JointSourceModel::Memoryless { positions, .. } = joint {
        let per: Vec<f64> = positions
            .iter()
            .map(|p| letter_conditional_entropy(&tilt_letter(p, r).0))
            .collect();
        return Ok((0..n).map(|i| per[i % per.len()]).sum::<f64>() / n as f64);
    }
    let s = 1.0 / (1.0 + r);
    let nx = joint.alphabets().0.size();
    let slices = map_outputs(joint, n, DEFAULT_ENUMERATION_BUDGET, |ys, _| {
        let mut terms = Vec::new();
        for_each_input(nx, n, |xs| terms.push(s * joint.log_prob_unchecked(xs, ys)));
        output_slice(&terms, r)
    })?;
    let weights: Vec<f64> = slices.iter().map(|s| s.0).collect();
    let ln_z = log_sum_exp(&weights);
    let parts: Vec<f64> = slices.iter().map(|&(w, h)| (w - ln_z).exp() * h).collect();
    Ok(crate::logspace::pairwise_sum(&parts) / n as f64)
}

/// Finds `ρ0` in `(0, 1)` with `dJ0/dρ(ρ0) = R` by bisection.
///
/// The slope is nondecreasing in `ρ`, so a solution exists exactly when `R`
/// lies strictly between the slopes at 0 and 1; otherwise this is a domain
/// error carrying that interval. Flat `J0` (for instance `Y` determining `X`)
/// has an empty interval and always errors.
pub fn solve_rho0(joint: &JointSourceModel, n: usize, rate: Rate) -> Result<Rho> {
    let target = rate.nats();
    let lo_slope = j0_derivative(joint, n, Rho::ZERO)?;
    let hi_slope = j0_derivative(joint, n, Rho::ONE)?;
    if !(lo_slope < target && target < hi_slope) {
        return Err(Error::Domain {
            what: "rate",
            value: target,
            lo: lo_slope,
            hi: hi_slope,
        });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut mid = 0.5;
    for _ in 0..SOLVE_MAX_ITERATIONS {
        mid = 0.5 * (lo + hi);
        let d = j0_derivative(joint, n, Rho::new(mid)?)?;
        if (d - target).abs() <= SOLVE_TOLERANCE || hi - lo <= f64::EPSILON {
            break;
        }
        if d < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Rho::new(mid)
}
