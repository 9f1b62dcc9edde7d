use rand::Rng;

use super::{
    check_sequence, mixture_log, mixture_violations, pick_component, Alphabet, Component, Family,
    Pmf, Stochastic,
};
use crate::error::{Result, Violation};

/// A general source `{P_{X^n}}` over a finite alphabet.
#[derive(Clone, Debug, PartialEq)]
pub enum SourceModel {
    /// Independent symbols; position `i` uses `positions[i % positions.len()]`.
    Memoryless { alphabet: Alphabet, positions: Vec<Pmf> },
    /// Homogeneous first-order Markov chain.
    Markov {
        alphabet: Alphabet,
        initial: Pmf,
        transition: Stochastic,
    },
    Mixture {
        alphabet: Alphabet,
        components: Vec<Component<SourceModel>>,
    },
}

impl SourceModel {
    pub fn iid(pmf: Pmf) -> Self {
        Self::memoryless(vec![pmf])
    }

    pub fn uniform(size: usize) -> Self {
        Self::iid(Pmf::uniform(size))
    }

    pub fn memoryless(positions: Vec<Pmf>) -> Self {
        let size = positions.first().map_or(0, Pmf::len);
        Self::Memoryless {
            alphabet: Alphabet::unchecked(size),
            positions,
        }
    }

    pub fn markov(initial: Pmf, transition: Vec<Vec<f64>>) -> Self {
        Self::Markov {
            alphabet: Alphabet::unchecked(initial.len()),
            initial,
            transition: Stochastic::new(transition),
        }
    }

    pub fn mixture(components: Vec<(f64, SourceModel)>) -> Self {
        let alphabet = components
            .first()
            .map_or(Alphabet::unchecked(0), |(_, m)| m.alphabet());
        Self::Mixture {
            alphabet,
            components: components
                .into_iter()
                .map(|(w, m)| Component::new(w, m))
                .collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Self::Memoryless { alphabet, .. }
            | Self::Markov { alphabet, .. }
            | Self::Mixture { alphabet, .. } => *alphabet,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Self::Memoryless { .. } => Family::Memoryless,
            Self::Markov { .. } => Family::Markov,
            Self::Mixture { .. } => Family::Mixture,
        }
    }

    /// Per-position law of a memoryless source.
    pub fn position(&self, i: usize) -> Option<&Pmf> {
        match self {
            Self::Memoryless { positions, .. } => Some(&positions[i % positions.len()]),
            _ => None,
        }
    }

    /// `ln P_{X^n}(x^n)`.
    pub fn log_prob(&self, xs: &[usize]) -> Result<f64> {
        check_sequence(xs, self.alphabet(), "x")?;
        Ok(self.log_prob_unchecked(xs))
    }

    pub(crate) fn log_prob_unchecked(&self, xs: &[usize]) -> f64 {
        match self {
            Self::Memoryless { positions, .. } => xs
                .iter()
                .enumerate()
                .map(|(i, &x)| positions[i % positions.len()].ln(x))
                .sum(),
            Self::Markov {
                initial, transition, ..
            } => {
                let mut acc = initial.ln(xs[0]);
                for w in xs.windows(2) {
                    acc += transition.ln(w[0], w[1]);
                }
                acc
            }
            Self::Mixture { components, .. } => {
                mixture_log(components, |m| m.log_prob_unchecked(xs))
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<usize> {
        match self {
            Self::Memoryless { positions, .. } => (0..n)
                .map(|i| positions[i % positions.len()].sample_with(rng.random()))
                .collect(),
            Self::Markov {
                initial, transition, ..
            } => {
                let mut out = Vec::with_capacity(n);
                let mut state = initial.sample_with(rng.random());
                out.push(state);
                for _ in 1..n {
                    state = transition.row(state).sample_with(rng.random());
                    out.push(state);
                }
                out.truncate(n);
                out
            }
            Self::Mixture { components, .. } => {
                let k = pick_component(components, rng.random());
                components[k].model.sample(rng, n)
            }
        }
    }

    /// Every violated invariant; empty when the model is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        self.violations("source")
    }

    pub(crate) fn violations(&self, location: &str) -> Vec<Violation> {
        let alphabet = self.alphabet();
        let mut out = alphabet.violations(location);
        match self {
            Self::Memoryless { positions, .. } => {
                if positions.is_empty() {
                    out.push(Violation {
                        location: location.to_string(),
                        residual: 1.0,
                        message: "no per-position distributions".into(),
                    });
                }
                for (i, p) in positions.iter().enumerate() {
                    out.extend(p.violations(&format!("{location} position {i}"), alphabet.size()));
                }
            }
            Self::Markov {
                initial, transition, ..
            } => {
                out.extend(initial.violations(&format!("{location} initial"), alphabet.size()));
                out.extend(transition.violations(
                    &format!("{location} transition"),
                    alphabet.size(),
                    alphabet.size(),
                ));
            }
            Self::Mixture { components, .. } => {
                out.extend(mixture_violations(
                    components,
                    location,
                    |m| matches!(m, Self::Mixture { .. }),
                    |m| m.alphabet() == alphabet,
                    |m, loc| m.violations(loc),
                ));
            }
        }
        out
    }
}
