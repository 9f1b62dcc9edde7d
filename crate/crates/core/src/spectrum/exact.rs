use super::{Atom, SpectrumCdf, SpectrumTarget};
use crate::enumerate::{for_each_input, map_outputs};
use crate::error::{Error, Result};
use crate::logspace::DEFAULT_ENUMERATION_BUDGET;

/// Support points closer than this (in summed, unnormalized nats) are merged.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Exact law of the density at blocklength `n`.
///
/// Memoryless models convolve per-letter atoms; anything else is enumerated
/// over `X^n × Y^n`, which fails with a capacity error past the default budget.
pub fn exact_spectrum<'a>(target: impl Into<SpectrumTarget<'a>>, n: usize) -> Result<SpectrumCdf> {
    exact_spectrum_with_budget(target, n, DEFAULT_ENUMERATION_BUDGET)
}

pub fn exact_spectrum_with_budget<'a>(
    target: impl Into<SpectrumTarget<'a>>,
    n: usize,
    budget: u128,
) -> Result<SpectrumCdf> {
    let target = target.into();
    check_n(n)?;
    match convolved(&target, n) {
        Some(atoms) => Ok(SpectrumCdf::exact(n, target.kind(), normalize(atoms, n))),
        None => enumerated_spectrum_with_budget(target, n, budget),
    }
}

/// Exact law by brute-force enumeration, regardless of model family.
pub fn enumerated_spectrum<'a>(target: impl Into<SpectrumTarget<'a>>, n: usize) -> Result<SpectrumCdf> {
    enumerated_spectrum_with_budget(target.into(), n, DEFAULT_ENUMERATION_BUDGET)
}

fn enumerated_spectrum_with_budget(target: SpectrumTarget<'_>, n: usize, budget: u128) -> Result<SpectrumCdf> {
    check_n(n)?;
    let joint = target.joint();
    let nx = joint.alphabets().0.size();
    let per_output = map_outputs(joint, n, budget, |ys, ln_py| {
        let mut atoms = Vec::new();
        for_each_input(nx, n, |xs| {
            let ln_p = joint.log_prob_unchecked(xs, ys);
            if ln_p > f64::NEG_INFINITY {
                atoms.push((target.scaled_density(xs, ys, ln_p, ln_py), ln_p.exp()));
            }
        });
        atoms
    })?;
    let atoms = merge(per_output.into_iter().flatten().collect());
    Ok(SpectrumCdf::exact(n, target.kind(), normalize(atoms, n)))
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Input("blocklength must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn convolved(target: &SpectrumTarget<'_>, n: usize) -> Option<Vec<(f64, f64)>> {
    let mut acc = vec![(0.0, 1.0)];
    for i in 0..n {
        let step = target.position_atoms(i)?;
        let mut next = Vec::with_capacity(acc.len() * step.len());
        for &(v, m) in &acc {
            for &(dv, dm) in &step {
                next.push((v + dv, m * dm));
            }
        }
        acc = merge(next);
    }
    Some(acc)
}

/// Sorts by value and merges runs within [`MERGE_TOLERANCE`] of the run's first value.
fn merge(mut atoms: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
    let mut anchor = f64::NAN;
    for (v, m) in atoms {
        match out.last_mut() {
            Some(last) if v - anchor <= MERGE_TOLERANCE => last.1 += m,
            _ => {
                anchor = v;
                out.push((v, m));
            }
        }
    }
    out
}

fn normalize(atoms: Vec<(f64, f64)>, n: usize) -> Vec<Atom> {
    atoms
        .into_iter()
        .map(|(v, m)| Atom {
            value: v / n as f64,
            mass: m,
        })
        .collect()
}
