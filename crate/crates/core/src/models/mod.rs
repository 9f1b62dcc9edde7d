//! Finite-alphabet process families: sources, correlated source pairs and channels.
//!
//! Three families are supported for each kind of model. *Memoryless* models
//! carry a list of per-position laws that repeats periodically (a single entry
//! is a stationary memoryless model). *Markov* models are homogeneous first-order
//! chains. *Mixture* models are finite convex combinations of non-mixture
//! components, which is the simplest way to get a process whose information
//! spectrum does not concentrate.

mod channel;
mod file;
mod induce;
mod joint;
mod pmf;
mod reference;
mod source;

pub use channel::ChannelModel;
pub use file::{load_model, parse_model, AnyModel, FILE_TOLERANCE};
pub use induce::{induce_joint, InputChannel};
pub use joint::JointSourceModel;
pub use pmf::{JointPmf, Pmf, Stochastic, NORMALIZATION_TOLERANCE};
pub use reference::{reference_rates, reference_rates_pair, ModelReference};
pub use source::SourceModel;

use crate::error::{Error, Result, Violation};
use crate::logspace::log_sum_exp;

/// Size of a finite symbol alphabet; symbols are `0..size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Input("alphabet size must be at least 1".into()));
        }
        Ok(Self(size))
    }

    pub(crate) const fn unchecked(size: usize) -> Self {
        Self(size)
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0
    }

    pub fn ln_size(self) -> f64 {
        (self.0 as f64).ln()
    }

    pub(crate) fn violations(self, location: &str) -> Vec<Violation> {
        if self.0 == 0 {
            vec![Violation {
                location: location.to_string(),
                residual: 1.0,
                message: "alphabet is empty".into(),
            }]
        } else {
            Vec::new()
        }
    }
}

/// One weighted member of a mixture.
#[derive(Clone, Debug, PartialEq)]
pub struct Component<M> {
    pub weight: f64,
    pub model: M,
}

impl<M> Component<M> {
    pub fn new(weight: f64, model: M) -> Self {
        Self { weight, model }
    }
}

/// Which of the three process families a model belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Memoryless,
    Markov,
    Mixture,
}

pub(crate) fn check_sequence(seq: &[usize], alphabet: Alphabet, what: &str) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::Input(format!("{what} sequence is empty")));
    }
    if let Some((i, &s)) = seq.iter().enumerate().find(|(_, &s)| s >= alphabet.size()) {
        return Err(Error::Input(format!(
            "{what}[{i}] = {s} is outside the alphabet of size {}",
            alphabet.size()
        )));
    }
    Ok(())
}

pub(crate) fn check_lengths(xs: &[usize], ys: &[usize]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::Input(format!(
            "sequence lengths differ: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    Ok(())
}

/// `ln Σ_k w_k exp(f(component_k))`.
pub(crate) fn mixture_log<M>(components: &[Component<M>], f: impl Fn(&M) -> f64) -> f64 {
    let terms: Vec<f64> = components
        .iter()
        .map(|c| c.weight.ln() + f(&c.model))
        .collect();
    log_sum_exp(&terms)
}

/// Picks a component index by weight from a uniform `u`.
pub(crate) fn pick_component<M>(components: &[Component<M>], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, c) in components.iter().enumerate() {
        acc += c.weight;
        if u < acc {
            return i;
        }
    }
    components.len() - 1
}

pub(crate) fn mixture_violations<M>(
    components: &[Component<M>],
    location: &str,
    is_mixture: impl Fn(&M) -> bool,
    same_alphabet: impl Fn(&M) -> bool,
    inner: impl Fn(&M, &str) -> Vec<Violation>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if components.is_empty() {
        out.push(Violation {
            location: location.to_string(),
            residual: 1.0,
            message: "mixture has no components".into(),
        });
        return out;
    }
    for (k, c) in components.iter().enumerate() {
        let loc = format!("{location} component {k}");
        if !(c.weight > 0.0) || !c.weight.is_finite() {
            out.push(Violation {
                location: format!("{loc} weight"),
                residual: if c.weight.is_finite() { -c.weight } else { f64::INFINITY },
                message: format!("weight {} is not positive", c.weight),
            });
        }
        if is_mixture(&c.model) {
            out.push(Violation {
                location: loc.clone(),
                residual: 0.0,
                message: "nested mixtures are not supported".into(),
            });
        }
        if !same_alphabet(&c.model) {
            out.push(Violation {
                location: loc.clone(),
                residual: 0.0,
                message: "component alphabet differs from the mixture alphabet".into(),
            });
        }
        out.extend(inner(&c.model, &loc));
    }
    let total: f64 = components.iter().map(|c| c.weight).sum();
    let residual = (total - 1.0).abs();
    if !(residual <= NORMALIZATION_TOLERANCE) {
        out.push(Violation {
            location: format!("{location} weights"),
            residual,
            message: "mixture weights do not sum to 1".into(),
        });
    }
    out
}
