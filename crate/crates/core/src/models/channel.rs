use rand::Rng;

use super::{
    check_lengths, check_sequence, mixture_log, mixture_violations, pick_component, Alphabet,
    Component, Family, Stochastic,
};
use crate::error::{Result, Violation};

/// A general channel `{W^n}` between finite alphabets.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelModel {
    /// Position `i` uses `positions[i % positions.len()]`.
    Memoryless {
        input: Alphabet,
        output: Alphabet,
        positions: Vec<Stochastic>,
    },
    Mixture {
        input: Alphabet,
        output: Alphabet,
        components: Vec<Component<ChannelModel>>,
    },
}

impl ChannelModel {
    pub fn dmc(rows: Vec<Vec<f64>>) -> Self {
        Self::memoryless(vec![Stochastic::new(rows)])
    }

    pub fn memoryless(positions: Vec<Stochastic>) -> Self {
        let (i, o) = positions
            .first()
            .map_or((0, 0), |m| (m.inputs(), m.outputs()));
        Self::Memoryless {
            input: Alphabet::unchecked(i),
            output: Alphabet::unchecked(o),
            positions,
        }
    }

    /// Binary symmetric channel with crossover probability `p`.
    pub fn bsc(p: f64) -> Self {
        Self::dmc(vec![vec![1.0 - p, p], vec![p, 1.0 - p]])
    }

    /// Noiseless channel on `size` symbols.
    pub fn identity(size: usize) -> Self {
        Self::dmc(
            (0..size)
                .map(|x| (0..size).map(|y| if x == y { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
    }

    pub fn mixture(components: Vec<(f64, ChannelModel)>) -> Self {
        let (input, output) = components.first().map_or(
            (Alphabet::unchecked(0), Alphabet::unchecked(0)),
            |(_, m)| m.alphabets(),
        );
        Self::Mixture {
            input,
            output,
            components: components
                .into_iter()
                .map(|(w, m)| Component::new(w, m))
                .collect(),
        }
    }

    /// `(input, output)` alphabets.
    pub fn alphabets(&self) -> (Alphabet, Alphabet) {
        match self {
            Self::Memoryless { input, output, .. } | Self::Mixture { input, output, .. } => {
                (*input, *output)
            }
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Self::Memoryless { .. } => Family::Memoryless,
            Self::Mixture { .. } => Family::Mixture,
        }
    }

    pub fn position(&self, i: usize) -> Option<&Stochastic> {
        match self {
            Self::Memoryless { positions, .. } => Some(&positions[i % positions.len()]),
            Self::Mixture { .. } => None,
        }
    }

    /// Number of distinct per-position matrices (1 for a stationary channel).
    pub fn period(&self) -> Option<usize> {
        match self {
            Self::Memoryless { positions, .. } => Some(positions.len()),
            Self::Mixture { .. } => None,
        }
    }

    /// `ln W^n(y^n | x^n)`; `-inf` when the transition is impossible.
    pub fn log_prob(&self, xs: &[usize], ys: &[usize]) -> Result<f64> {
        check_lengths(xs, ys)?;
        let (i, o) = self.alphabets();
        check_sequence(xs, i, "x")?;
        check_sequence(ys, o, "y")?;
        Ok(self.log_prob_unchecked(xs, ys))
    }

    pub(crate) fn log_prob_unchecked(&self, xs: &[usize], ys: &[usize]) -> f64 {
        match self {
            Self::Memoryless { positions, .. } => xs
                .iter()
                .zip(ys)
                .enumerate()
                .map(|(i, (&x, &y))| positions[i % positions.len()].ln(x, y))
                .sum(),
            Self::Mixture { components, .. } => {
                mixture_log(components, |m| m.log_prob_unchecked(xs, ys))
            }
        }
    }

    /// Passes `xs` through the channel. A mixture picks its component once per block.
    pub fn transmit<R: Rng + ?Sized>(&self, rng: &mut R, xs: &[usize]) -> Vec<usize> {
        match self {
            Self::Memoryless { positions, .. } => xs
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    positions[i % positions.len()]
                        .row(x)
                        .sample_with(rng.random())
                })
                .collect(),
            Self::Mixture { components, .. } => {
                let k = pick_component(components, rng.random());
                components[k].model.transmit(rng, xs)
            }
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.violations("channel")
    }

    pub(crate) fn violations(&self, location: &str) -> Vec<Violation> {
        let (input, output) = self.alphabets();
        let mut out = input.violations(&format!("{location} input alphabet"));
        out.extend(output.violations(&format!("{location} output alphabet")));
        match self {
            Self::Memoryless { positions, .. } => {
                if positions.is_empty() {
                    out.push(Violation {
                        location: location.to_string(),
                        residual: 1.0,
                        message: "no per-position matrices".into(),
                    });
                }
                for (i, m) in positions.iter().enumerate() {
                    out.extend(m.violations(
                        &format!("{location} position {i}"),
                        input.size(),
                        output.size(),
                    ));
                }
            }
            Self::Mixture { components, .. } => {
                out.extend(mixture_violations(
                    components,
                    location,
                    |m| matches!(m, Self::Mixture { .. }),
                    |m| m.alphabets() == (input, output),
                    |m, loc| m.violations(loc),
                ));
            }
        }
        out
    }
}
