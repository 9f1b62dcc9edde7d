use super::{ChannelModel, JointPmf, JointSourceModel, Pmf, SourceModel};
use crate::error::{Error, Result};

/// Builds `P_{X^n Y^n} = P_{X^n} · W^n`.
///
/// Memoryless inputs through memoryless channels stay memoryless (with the
/// least common period). A Markov input through a stationary memoryless channel
/// becomes a Markov chain on pairs. Mixtures on either side distribute over the
/// other side, giving a flat mixture with product weights.
pub fn induce_joint(input: &SourceModel, channel: &ChannelModel) -> Result<JointSourceModel> {
    let (cin, _) = channel.alphabets();
    if input.alphabet() != cin {
        return Err(Error::Input(format!(
            "input alphabet has {} symbols but the channel expects {}",
            input.alphabet().size(),
            cin.size()
        )));
    }
    match (input, channel) {
        (SourceModel::Mixture { components, .. }, _) => {
            let mut parts = Vec::new();
            for c in components {
                match induce_joint(&c.model, channel)? {
                    JointSourceModel::Mixture { components: inner, .. } => parts
                        .extend(inner.into_iter().map(|ic| (c.weight * ic.weight, ic.model))),
                    joint => parts.push((c.weight, joint)),
                }
            }
            Ok(JointSourceModel::mixture(parts))
        }
        (_, ChannelModel::Mixture { components, .. }) => {
            let parts = components
                .iter()
                .map(|c| Ok((c.weight, induce_joint(input, &c.model)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(JointSourceModel::mixture(parts))
        }
        (SourceModel::Memoryless { positions: sp, .. }, ChannelModel::Memoryless { positions: cp, .. }) => {
            let period = lcm(sp.len(), cp.len());
            Ok(JointSourceModel::memoryless(
                (0..period)
                    .map(|i| JointPmf::from_input_and_channel(&sp[i % sp.len()], &cp[i % cp.len()]))
                    .collect(),
            ))
        }
        (
            SourceModel::Markov {
                initial, transition, ..
            },
            ChannelModel::Memoryless { positions, .. },
        ) => {
            if positions.len() != 1 {
                return Err(Error::Input(
                    "a Markov input composes only with a stationary memoryless channel".into(),
                ));
            }
            let w = &positions[0];
            let (nx, ny) = (w.inputs(), w.outputs());
            let init = JointPmf::from_input_and_channel(initial, w);
            let rows = (0..nx * ny)
                .map(|s| {
                    let from = s / ny;
                    (0..nx * ny)
                        .map(|t| transition.row(from).prob(t / ny) * w.row(t / ny).prob(t % ny))
                        .collect()
                })
                .collect();
            Ok(JointSourceModel::markov(
                nx,
                ny,
                Pmf::new(init.cells().probs().to_vec()),
                rows,
            ))
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// An input process paired with a channel, plus the joint law they induce.
#[derive(Clone, Debug)]
pub struct InputChannel {
    input: SourceModel,
    channel: ChannelModel,
    joint: JointSourceModel,
}

impl InputChannel {
    pub fn new(input: SourceModel, channel: ChannelModel) -> Result<Self> {
        let joint = induce_joint(&input, &channel)?;
        Ok(Self {
            input,
            channel,
            joint,
        })
    }

    /// Uniform i.i.d. input over the channel's input alphabet.
    pub fn with_uniform_input(channel: ChannelModel) -> Result<Self> {
        let size = channel.alphabets().0.size();
        Self::new(SourceModel::uniform(size), channel)
    }

    pub fn input(&self) -> &SourceModel {
        &self.input
    }

    pub fn channel(&self) -> &ChannelModel {
        &self.channel
    }

    pub fn joint(&self) -> &JointSourceModel {
        &self.joint
    }
}
