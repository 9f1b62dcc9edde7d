//! Information spectra at finite blocklength.
//!
//! For an input/channel pair the *information density* is
//! `(1/n) ln W^n(y^n|x^n) / P_{Y^n}(y^n)`; for a correlated source pair the
//! *entropy density* is `(1/n) ln 1 / P_{X^n|Y^n}(x^n|y^n)`. This module computes
//! their laws under `P_{X^n Y^n}` (exactly or by sampling), the tail
//! probabilities `ε_n` that drive the exponent bounds, and an exhaustive check
//! of the set inequality used in the bound's proof.

mod density;
mod exact;
mod monte_carlo;
mod proof_sets;

pub use density::{entropy_density, information_density};
pub use exact::{enumerated_spectrum, exact_spectrum, exact_spectrum_with_budget, MERGE_TOLERANCE};
pub use monte_carlo::monte_carlo_spectrum;
pub use proof_sets::{proof_set_diagnostic, ProofSetReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logspace::pairwise_sum;
use crate::models::{Family, InputChannel, JointSourceModel};

/// Which density a spectrum describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityKind {
    Information,
    Entropy,
}

impl DensityKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Information => "information-density",
            Self::Entropy => "entropy-density",
        }
    }

    /// The tail whose probability is `ε_n` for this kind.
    pub fn tail(self) -> Tail {
        match self {
            Self::Information => Tail::BelowStrict,
            Self::Entropy => Tail::AboveStrict,
        }
    }
}

/// Strict tail events `{density < t}` and `{density > t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    BelowStrict,
    AboveStrict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMode {
    Exact,
    MonteCarlo,
}

/// What a spectrum is computed for: a channel with its input, or a correlated pair.
#[derive(Clone, Copy, Debug)]
pub enum SpectrumTarget<'a> {
    Channel(&'a InputChannel),
    Source(&'a JointSourceModel),
}

impl<'a> From<&'a InputChannel> for SpectrumTarget<'a> {
    fn from(p: &'a InputChannel) -> Self {
        Self::Channel(p)
    }
}

impl<'a> From<&'a JointSourceModel> for SpectrumTarget<'a> {
    fn from(j: &'a JointSourceModel) -> Self {
        Self::Source(j)
    }
}

impl<'a> SpectrumTarget<'a> {
    pub fn kind(&self) -> DensityKind {
        match self {
            Self::Channel(_) => DensityKind::Information,
            Self::Source(_) => DensityKind::Entropy,
        }
    }

    pub fn joint(&self) -> &'a JointSourceModel {
        match self {
            Self::Channel(p) => p.joint(),
            Self::Source(j) => j,
        }
    }

    /// `n` times the density, from precomputed `ln P(x^n, y^n)` and `ln P(y^n)`.
    pub(crate) fn scaled_density(&self, xs: &[usize], ys: &[usize], ln_joint: f64, ln_py: f64) -> f64 {
        match self {
            Self::Channel(p) => p.channel().log_prob_unchecked(xs, ys) - ln_py,
            Self::Source(_) => -(ln_joint - ln_py),
        }
    }

    /// Per-letter `(scaled density, mass)` atoms of position `i`, when the law factorizes.
    pub(crate) fn position_atoms(&self, i: usize) -> Option<Vec<(f64, f64)>> {
        let joint = self.joint();
        if joint.family() != Family::Memoryless {
            return None;
        }
        let jp = joint.position(i)?;
        let mut atoms = Vec::new();
        for x in 0..jp.nx() {
            for y in 0..jp.ny() {
                let mass = jp.prob(x, y);
                if mass > 0.0 {
                    let ln_py = jp.marginal_y().ln(y);
                    let value = match self {
                        Self::Channel(p) => p.channel().position(i)?.ln(x, y) - ln_py,
                        Self::Source(_) => -(jp.ln(x, y) - ln_py),
                    };
                    atoms.push((value, mass));
                }
            }
        }
        Some(atoms)
    }
}

/// A support point of an exact spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Atom {
    pub value: f64,
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq)]
enum SpectrumData {
    Exact(Vec<Atom>),
    MonteCarlo { samples: Vec<f64>, seed: u64 },
}

/// The law of the normalized density at blocklength `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumCdf {
    n: usize,
    kind: DensityKind,
    data: SpectrumData,
}

impl SpectrumCdf {
    pub(crate) fn exact(n: usize, kind: DensityKind, atoms: Vec<Atom>) -> Self {
        Self {
            n,
            kind,
            data: SpectrumData::Exact(atoms),
        }
    }

    pub(crate) fn sampled(n: usize, kind: DensityKind, samples: Vec<f64>, seed: u64) -> Self {
        Self {
            n,
            kind,
            data: SpectrumData::MonteCarlo { samples, seed },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn mode(&self) -> SpectrumMode {
        match self.data {
            SpectrumData::Exact(_) => SpectrumMode::Exact,
            SpectrumData::MonteCarlo { .. } => SpectrumMode::MonteCarlo,
        }
    }

    /// Sorted support of an exact spectrum; empty in Monte Carlo mode.
    pub fn atoms(&self) -> &[Atom] {
        match &self.data {
            SpectrumData::Exact(a) => a,
            SpectrumData::MonteCarlo { .. } => &[],
        }
    }

    /// Draws in sample-index order; empty in exact mode.
    pub fn samples(&self) -> &[f64] {
        match &self.data {
            SpectrumData::Exact(_) => &[],
            SpectrumData::MonteCarlo { samples, .. } => samples,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match &self.data {
            SpectrumData::Exact(_) => None,
            SpectrumData::MonteCarlo { seed, .. } => Some(*seed),
        }
    }

    pub fn sample_count(&self) -> Option<usize> {
        match &self.data {
            SpectrumData::Exact(_) => None,
            SpectrumData::MonteCarlo { samples, .. } => Some(samples.len()),
        }
    }

    pub fn total_mass(&self) -> f64 {
        match &self.data {
            SpectrumData::Exact(a) => pairwise_sum(&a.iter().map(|a| a.mass).collect::<Vec<_>>()),
            SpectrumData::MonteCarlo { .. } => 1.0,
        }
    }

    /// Expected density (nats per symbol).
    pub fn mean(&self) -> f64 {
        match &self.data {
            SpectrumData::Exact(a) => {
                pairwise_sum(&a.iter().map(|a| a.value * a.mass).collect::<Vec<_>>())
            }
            SpectrumData::MonteCarlo { samples, .. } => {
                pairwise_sum(samples) / samples.len() as f64
            }
        }
    }

    fn tail_fraction(&self, t: f64, tail: Tail) -> f64 {
        let hit = |v: f64| match tail {
            Tail::BelowStrict => v < t,
            Tail::AboveStrict => v > t,
        };
        match &self.data {
            SpectrumData::Exact(a) => {
                let masses: Vec<f64> = a.iter().filter(|a| hit(a.value)).map(|a| a.mass).collect();
                pairwise_sum(&masses).clamp(0.0, 1.0)
            }
            SpectrumData::MonteCarlo { samples, .. } => {
                samples.iter().filter(|&&v| hit(v)).count() as f64 / samples.len() as f64
            }
        }
    }
}

/// Tail probability `ε_n` at threshold `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailProbe {
    pub threshold: f64,
    pub epsilon: f64,
    pub mode: SpectrumMode,
    /// 99% Hoeffding half-width, Monte Carlo only.
    pub ci_halfwidth: Option<f64>,
}

/// Two-sided 99% Hoeffding half-width for a mean of `samples` Bernoulli draws.
pub fn hoeffding_halfwidth(samples: usize) -> f64 {
    ((2.0f64 / 0.01).ln() / (2.0 * samples as f64)).sqrt()
}

/// `Pr{density < t}` for information spectra, `Pr{density > t}` for entropy spectra.
pub fn epsilon_at(spectrum: &SpectrumCdf, t: f64, tail: Tail) -> Result<TailProbe> {
    if tail != spectrum.kind.tail() {
        return Err(Error::Input(format!(
            "a {} spectrum takes the {:?} tail, not {:?}",
            spectrum.kind.name(),
            spectrum.kind.tail(),
            tail
        )));
    }
    if t.is_nan() {
        return Err(Error::Input("threshold is NaN".into()));
    }
    Ok(TailProbe {
        threshold: t,
        epsilon: spectrum.tail_fraction(t, tail),
        mode: spectrum.mode(),
        ci_halfwidth: spectrum.sample_count().map(hoeffding_halfwidth),
    })
}
