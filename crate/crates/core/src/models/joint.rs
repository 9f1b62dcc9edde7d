use rand::Rng;

use super::{
    check_lengths, check_sequence, mixture_log, mixture_violations, pick_component, Alphabet,
    Component, Family, JointPmf, Pmf, Stochastic,
};
use crate::error::{Result, Violation};
use crate::logspace::log_sum_exp;

/// Correlated sources `{P_{X^n Y^n}}` over `X × Y`.
#[derive(Clone, Debug, PartialEq)]
pub enum JointSourceModel {
    /// Independent pairs; position `i` uses `positions[i % positions.len()]`.
    Memoryless {
        x: Alphabet,
        y: Alphabet,
        positions: Vec<JointPmf>,
    },
    /// Homogeneous Markov chain on pair states `x * |Y| + y`.
    Markov {
        x: Alphabet,
        y: Alphabet,
        initial: Pmf,
        transition: Stochastic,
    },
    Mixture {
        x: Alphabet,
        y: Alphabet,
        components: Vec<Component<JointSourceModel>>,
    },
}

impl JointSourceModel {
    pub fn iid(pmf: JointPmf) -> Self {
        Self::memoryless(vec![pmf])
    }

    pub fn memoryless(positions: Vec<JointPmf>) -> Self {
        let (nx, ny) = positions.first().map_or((0, 0), |p| (p.nx(), p.ny()));
        Self::Memoryless {
            x: Alphabet::unchecked(nx),
            y: Alphabet::unchecked(ny),
            positions,
        }
    }

    /// `initial` and `transition` are indexed by pair state `x * ny + y`.
    pub fn markov(nx: usize, ny: usize, initial: Pmf, transition: Vec<Vec<f64>>) -> Self {
        Self::Markov {
            x: Alphabet::unchecked(nx),
            y: Alphabet::unchecked(ny),
            initial,
            transition: Stochastic::new(transition),
        }
    }

    pub fn mixture(components: Vec<(f64, JointSourceModel)>) -> Self {
        let (x, y) = components.first().map_or(
            (Alphabet::unchecked(0), Alphabet::unchecked(0)),
            |(_, m)| m.alphabets(),
        );
        Self::Mixture {
            x,
            y,
            components: components
                .into_iter()
                .map(|(w, m)| Component::new(w, m))
                .collect(),
        }
    }

    /// Doubly symmetric binary source: uniform `X`, `Y = X` flipped with probability `p`.
    pub fn doubly_symmetric(p: f64) -> Self {
        Self::iid(JointPmf::new(vec![
            vec![0.5 * (1.0 - p), 0.5 * p],
            vec![0.5 * p, 0.5 * (1.0 - p)],
        ]))
    }

    /// Uniform `X` on `size` symbols with `Y = X`.
    pub fn perfectly_correlated(size: usize) -> Self {
        let u = 1.0 / size as f64;
        Self::iid(JointPmf::new(
            (0..size)
                .map(|x| (0..size).map(|y| if x == y { u } else { 0.0 }).collect())
                .collect(),
        ))
    }

    /// Independent `X ~ px`, `Y ~ py`.
    pub fn independent(px: &Pmf, py: &Pmf) -> Self {
        Self::iid(JointPmf::new(
            px.probs()
                .iter()
                .map(|&a| py.probs().iter().map(|&b| a * b).collect())
                .collect(),
        ))
    }

    pub fn alphabets(&self) -> (Alphabet, Alphabet) {
        match self {
            Self::Memoryless { x, y, .. }
            | Self::Markov { x, y, .. }
            | Self::Mixture { x, y, .. } => (*x, *y),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Self::Memoryless { .. } => Family::Memoryless,
            Self::Markov { .. } => Family::Markov,
            Self::Mixture { .. } => Family::Mixture,
        }
    }

    pub fn position(&self, i: usize) -> Option<&JointPmf> {
        match self {
            Self::Memoryless { positions, .. } => Some(&positions[i % positions.len()]),
            _ => None,
        }
    }

    /// Stationary memoryless single-letter law, if the model is one.
    pub fn single_letter(&self) -> Option<&JointPmf> {
        match self {
            Self::Memoryless { positions, .. } if positions.len() == 1 => Some(&positions[0]),
            _ => None,
        }
    }

    fn check(&self, xs: &[usize], ys: &[usize]) -> Result<()> {
        check_lengths(xs, ys)?;
        let (ax, ay) = self.alphabets();
        check_sequence(xs, ax, "x")?;
        check_sequence(ys, ay, "y")
    }

    /// `ln P_{X^n Y^n}(x^n, y^n)`.
    pub fn log_prob(&self, xs: &[usize], ys: &[usize]) -> Result<f64> {
        self.check(xs, ys)?;
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
            Self::Markov {
                y,
                initial,
                transition,
                ..
            } => {
                let ny = y.size();
                let mut prev = xs[0] * ny + ys[0];
                let mut acc = initial.ln(prev);
                for (&a, &b) in xs.iter().zip(ys).skip(1) {
                    let s = a * ny + b;
                    acc += transition.ln(prev, s);
                    prev = s;
                }
                acc
            }
            Self::Mixture { components, .. } => {
                mixture_log(components, |m| m.log_prob_unchecked(xs, ys))
            }
        }
    }

    /// `ln P_{Y^n}(y^n)`.
    pub fn marginal_y_log_prob(&self, ys: &[usize]) -> Result<f64> {
        check_sequence(ys, self.alphabets().1, "y")?;
        Ok(self.marginal_y_log_prob_unchecked(ys))
    }

    pub(crate) fn marginal_y_log_prob_unchecked(&self, ys: &[usize]) -> f64 {
        match self {
            Self::Memoryless { positions, .. } => ys
                .iter()
                .enumerate()
                .map(|(i, &y)| positions[i % positions.len()].marginal_y().ln(y))
                .sum(),
            Self::Markov {
                x,
                y,
                initial,
                transition,
            } => {
                // forward recursion over the hidden x component
                let (nx, ny) = (x.size(), y.size());
                let mut alpha: Vec<f64> = (0..nx).map(|a| initial.ln(a * ny + ys[0])).collect();
                let mut terms = vec![0.0; nx];
                for w in ys.windows(2) {
                    let next: Vec<f64> = (0..nx)
                        .map(|a| {
                            for (b, t) in terms.iter_mut().enumerate() {
                                *t = alpha[b] + transition.ln(b * ny + w[0], a * ny + w[1]);
                            }
                            log_sum_exp(&terms)
                        })
                        .collect();
                    alpha = next;
                }
                log_sum_exp(&alpha)
            }
            Self::Mixture { components, .. } => {
                mixture_log(components, |m| m.marginal_y_log_prob_unchecked(ys))
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> (Vec<usize>, Vec<usize>) {
        match self {
            Self::Memoryless { y, positions, .. } => {
                let ny = y.size();
                (0..n)
                    .map(|i| {
                        let s = positions[i % positions.len()].cells().sample_with(rng.random());
                        (s / ny, s % ny)
                    })
                    .unzip()
            }
            Self::Markov {
                y,
                initial,
                transition,
                ..
            } => {
                let ny = y.size();
                let mut state = initial.sample_with(rng.random());
                let mut states = Vec::with_capacity(n);
                for i in 0..n {
                    if i > 0 {
                        state = transition.row(state).sample_with(rng.random());
                    }
                    states.push(state);
                }
                states.into_iter().map(|s| (s / ny, s % ny)).unzip()
            }
            Self::Mixture { components, .. } => {
                let k = pick_component(components, rng.random());
                components[k].model.sample(rng, n)
            }
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.violations("joint")
    }

    pub(crate) fn violations(&self, location: &str) -> Vec<Violation> {
        let (ax, ay) = self.alphabets();
        let mut out = ax.violations(&format!("{location} x alphabet"));
        out.extend(ay.violations(&format!("{location} y alphabet")));
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
                    out.extend(p.violations(
                        &format!("{location} position {i}"),
                        ax.size(),
                        ay.size(),
                    ));
                }
            }
            Self::Markov {
                initial, transition, ..
            } => {
                let states = ax.size() * ay.size();
                out.extend(initial.violations(&format!("{location} initial"), states));
                out.extend(transition.violations(
                    &format!("{location} transition"),
                    states,
                    states,
                ));
            }
            Self::Mixture { components, .. } => {
                out.extend(mixture_violations(
                    components,
                    location,
                    |m| matches!(m, Self::Mixture { .. }),
                    |m| m.alphabets() == (ax, ay),
                    |m, loc| m.violations(loc),
                ));
            }
        }
        out
    }
}
