//! JSON model files.
//!
//! ```json
//! {"type": "channel", "family": "memoryless", "alphabet": [2, 2],
//!  "positions": [[[0.89, 0.11], [0.11, 0.89]]]}
//! ```
//!
//! `type` is `source`, `joint` or `channel`; `family` is `memoryless`, `markov`
//! or `mixture`. `alphabet` is a single size for sources and `[|X|, |Y|]`
//! otherwise. Family fields:
//!
//! * memoryless: `positions`, a list of per-position laws (a vector for a
//!   source, an `|X| × |Y|` matrix for a channel or a joint);
//! * markov: `initial` (vector, or `|X| × |Y|` matrix for a joint) and
//!   `transition` (row-stochastic; joint states are ordered `x * |Y| + y`);
//! * mixture: `components`, a list of `{"weight": w, "model": {...}}` whose
//!   models omit `type` and may omit `alphabet`.
//!
//! Rows whose sum is off by more than [`NORMALIZATION_TOLERANCE`] but less
//! than [`FILE_TOLERANCE`] are renormalized; anything further off is rejected.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{ChannelModel, JointPmf, JointSourceModel, Pmf, SourceModel, Stochastic, NORMALIZATION_TOLERANCE};
use crate::error::{Error, Result, Violation};

pub const FILE_TOLERANCE: f64 = 1e-9;

/// One of the three model kinds.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyModel {
    Source(SourceModel),
    Joint(JointSourceModel),
    Channel(ChannelModel),
}

impl AnyModel {
    /// Every violated invariant of the wrapped model.
    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Self::Source(m) => m.validate(),
            Self::Joint(m) => m.validate(),
            Self::Channel(m) => m.validate(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Source(_) => "source",
            Self::Joint(_) => "joint",
            Self::Channel(_) => "channel",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = match self {
            Self::Source(m) => source_json(m),
            Self::Joint(m) => joint_json(m),
            Self::Channel(m) => channel_json(m),
        };
        v["type"] = json!(self.kind());
        v
    }
}

#[derive(Deserialize, Clone, Copy, PartialEq)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Source,
    Joint,
    Channel,
}

#[derive(Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum FamilyName {
    Memoryless,
    Markov,
    Mixture,
}

#[derive(Deserialize, Clone, Copy)]
#[serde(untagged)]
enum RawAlphabet {
    One(usize),
    Two([usize; 2]),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(rename = "type")]
    kind: Option<Kind>,
    family: FamilyName,
    alphabet: Option<RawAlphabet>,
    positions: Option<Value>,
    initial: Option<Value>,
    transition: Option<Value>,
    components: Option<Vec<RawComponent>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    weight: f64,
    model: RawModel,
}

pub fn load_model(path: impl AsRef<Path>) -> Result<AnyModel> {
    parse_model(&std::fs::read_to_string(path)?)
}

pub fn parse_model(text: &str) -> Result<AnyModel> {
    let raw: RawModel = serde_json::from_str(text)?;
    let kind = raw
        .kind
        .ok_or_else(|| Error::Input("model file is missing `type`".into()))?;
    let model = build(kind, raw, None, "model")?;
    let violations = model.validate();
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(Error::Validation(violations))
    }
}

fn build(kind: Kind, raw: RawModel, inherited: Option<RawAlphabet>, loc: &str) -> Result<AnyModel> {
    if raw.kind.is_some_and(|k| k != kind) {
        return Err(Error::Input(format!("{loc}: component type differs from the mixture type")));
    }
    let alphabet = raw
        .alphabet
        .or(inherited)
        .ok_or_else(|| Error::Input(format!("{loc}: missing `alphabet`")))?;
    let (nx, ny) = match (kind, alphabet) {
        (Kind::Source, RawAlphabet::One(k)) => (k, 0),
        (Kind::Source, RawAlphabet::Two(_)) => {
            return Err(Error::Input(format!("{loc}: a source alphabet is a single size")))
        }
        (_, RawAlphabet::Two([a, b])) => (a, b),
        (_, RawAlphabet::One(_)) => {
            return Err(Error::Input(format!("{loc}: expected `alphabet: [|X|, |Y|]`")))
        }
    };
    if nx == 0 || (kind != Kind::Source && ny == 0) {
        return Err(Error::Input(format!("{loc}: alphabet sizes must be positive")));
    }

    match raw.family {
        FamilyName::Memoryless => {
            let positions = required(raw.positions, "positions", loc)?;
            match kind {
                Kind::Source => {
                    let rows: Vec<Vec<f64>> = serde_json::from_value(positions)?;
                    let pmfs = rows
                        .into_iter()
                        .enumerate()
                        .map(|(i, r)| Ok(Pmf::new(normalize(r, nx, &format!("{loc} position {i}"))?)))
                        .collect::<Result<Vec<_>>>()?;
                    non_empty(&pmfs, loc)?;
                    Ok(AnyModel::Source(SourceModel::memoryless(pmfs)))
                }
                Kind::Channel => {
                    let mats: Vec<Vec<Vec<f64>>> = serde_json::from_value(positions)?;
                    let ms = mats
                        .into_iter()
                        .enumerate()
                        .map(|(i, m)| stochastic(m, nx, ny, &format!("{loc} position {i}")))
                        .collect::<Result<Vec<_>>>()?;
                    non_empty(&ms, loc)?;
                    Ok(AnyModel::Channel(ChannelModel::memoryless(ms)))
                }
                Kind::Joint => {
                    let mats: Vec<Vec<Vec<f64>>> = serde_json::from_value(positions)?;
                    let ps = mats
                        .into_iter()
                        .enumerate()
                        .map(|(i, m)| {
                            let cells = flatten(m, nx, ny, &format!("{loc} position {i}"))?;
                            let cells = normalize(cells, nx * ny, &format!("{loc} position {i}"))?;
                            Ok(JointPmf::from_cells(nx, ny, cells))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    non_empty(&ps, loc)?;
                    Ok(AnyModel::Joint(JointSourceModel::memoryless(ps)))
                }
            }
        }
        FamilyName::Markov => {
            let initial = required(raw.initial, "initial", loc)?;
            let transition: Vec<Vec<f64>> =
                serde_json::from_value(required(raw.transition, "transition", loc)?)?;
            match kind {
                Kind::Source => {
                    let init: Vec<f64> = serde_json::from_value(initial)?;
                    let init = normalize(init, nx, &format!("{loc} initial"))?;
                    let t = stochastic(transition, nx, nx, &format!("{loc} transition"))?;
                    Ok(AnyModel::Source(SourceModel::Markov {
                        alphabet: super::Alphabet::unchecked(nx),
                        initial: Pmf::new(init),
                        transition: t,
                    }))
                }
                Kind::Joint => {
                    let init: Vec<Vec<f64>> = serde_json::from_value(initial)?;
                    let init = flatten(init, nx, ny, &format!("{loc} initial"))?;
                    let init = normalize(init, nx * ny, &format!("{loc} initial"))?;
                    let t = stochastic(transition, nx * ny, nx * ny, &format!("{loc} transition"))?;
                    Ok(AnyModel::Joint(JointSourceModel::Markov {
                        x: super::Alphabet::unchecked(nx),
                        y: super::Alphabet::unchecked(ny),
                        initial: Pmf::new(init),
                        transition: t,
                    }))
                }
                Kind::Channel => Err(Error::Input(format!(
                    "{loc}: channels have no markov family"
                ))),
            }
        }
        FamilyName::Mixture => {
            let comps = raw
                .components
                .ok_or_else(|| Error::Input(format!("{loc}: missing `components`")))?;
            if comps.is_empty() {
                return Err(Error::Input(format!("{loc}: mixture has no components")));
            }
            let weights = normalize(
                comps.iter().map(|c| c.weight).collect(),
                comps.len(),
                &format!("{loc} weights"),
            )?;
            let mut models = Vec::with_capacity(comps.len());
            for (k, (c, w)) in comps.into_iter().zip(weights).enumerate() {
                let m = build(kind, c.model, Some(alphabet), &format!("{loc} component {k}"))?;
                models.push((w, m));
            }
            Ok(match kind {
                Kind::Source => AnyModel::Source(SourceModel::mixture(
                    models.into_iter().map(|(w, m)| (w, unwrap_source(m))).collect(),
                )),
                Kind::Joint => AnyModel::Joint(JointSourceModel::mixture(
                    models.into_iter().map(|(w, m)| (w, unwrap_joint(m))).collect(),
                )),
                Kind::Channel => AnyModel::Channel(ChannelModel::mixture(
                    models.into_iter().map(|(w, m)| (w, unwrap_channel(m))).collect(),
                )),
            })
        }
    }
}

fn unwrap_source(m: AnyModel) -> SourceModel {
    match m {
        AnyModel::Source(s) => s,
        _ => unreachable!("component kind is inherited"),
    }
}

fn unwrap_joint(m: AnyModel) -> JointSourceModel {
    match m {
        AnyModel::Joint(s) => s,
        _ => unreachable!("component kind is inherited"),
    }
}

fn unwrap_channel(m: AnyModel) -> ChannelModel {
    match m {
        AnyModel::Channel(s) => s,
        _ => unreachable!("component kind is inherited"),
    }
}

fn required(v: Option<Value>, field: &str, loc: &str) -> Result<Value> {
    v.ok_or_else(|| Error::Input(format!("{loc}: missing `{field}`")))
}

fn non_empty<T>(v: &[T], loc: &str) -> Result<()> {
    if v.is_empty() {
        Err(Error::Input(format!("{loc}: `positions` is empty")))
    } else {
        Ok(())
    }
}

fn flatten(m: Vec<Vec<f64>>, nx: usize, ny: usize, loc: &str) -> Result<Vec<f64>> {
    if m.len() != nx || m.iter().any(|r| r.len() != ny) {
        return Err(Error::Input(format!("{loc}: expected a {nx}x{ny} matrix")));
    }
    Ok(m.into_iter().flatten().collect())
}

fn stochastic(m: Vec<Vec<f64>>, rows: usize, cols: usize, loc: &str) -> Result<Stochastic> {
    if m.len() != rows {
        return Err(Error::Input(format!("{loc}: expected {rows} rows, found {}", m.len())));
    }
    let rows = m
        .into_iter()
        .enumerate()
        .map(|(i, r)| normalize(r, cols, &format!("{loc} row {i}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Stochastic::new(rows))
}

/// Checks a row and renormalizes it when the residual is below [`FILE_TOLERANCE`].
fn normalize(row: Vec<f64>, len: usize, loc: &str) -> Result<Vec<f64>> {
    if row.len() != len {
        return Err(Error::Input(format!(
            "{loc}: expected {len} entries, found {}",
            row.len()
        )));
    }
    if let Some((i, &p)) = row.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
        return Err(Error::Validation(vec![Violation {
            location: format!("{loc}[{i}]"),
            residual: if p.is_finite() { -p } else { f64::INFINITY },
            message: format!("entry {p} is not a probability"),
        }]));
    }
    let sum: f64 = row.iter().sum();
    let residual = (sum - 1.0).abs();
    if residual >= FILE_TOLERANCE {
        return Err(Error::Validation(vec![Violation {
            location: loc.to_string(),
            residual,
            message: "does not sum to 1".into(),
        }]));
    }
    // Rows already valid in memory are kept bit for bit so files round-trip.
    if residual <= NORMALIZATION_TOLERANCE {
        Ok(row)
    } else {
        Ok(row.into_iter().map(|p| p / sum).collect())
    }
}

fn rows_of(m: &Stochastic) -> Vec<Vec<f64>> {
    m.rows().iter().map(|r| r.probs().to_vec()).collect()
}

fn matrix_of(p: &JointPmf) -> Vec<Vec<f64>> {
    p.cells().probs().chunks(p.ny()).map(<[f64]>::to_vec).collect()
}

fn source_json(m: &SourceModel) -> Value {
    let alphabet = m.alphabet().size();
    match m {
        SourceModel::Memoryless { positions, .. } => json!({
            "family": "memoryless",
            "alphabet": alphabet,
            "positions": positions.iter().map(|p| p.probs().to_vec()).collect::<Vec<_>>(),
        }),
        SourceModel::Markov {
            initial, transition, ..
        } => json!({
            "family": "markov",
            "alphabet": alphabet,
            "initial": initial.probs(),
            "transition": rows_of(transition),
        }),
        SourceModel::Mixture { components, .. } => json!({
            "family": "mixture",
            "alphabet": alphabet,
            "components": components.iter()
                .map(|c| json!({"weight": c.weight, "model": source_json(&c.model)}))
                .collect::<Vec<_>>(),
        }),
    }
}

fn joint_json(m: &JointSourceModel) -> Value {
    let (x, y) = m.alphabets();
    let alphabet = [x.size(), y.size()];
    match m {
        JointSourceModel::Memoryless { positions, .. } => json!({
            "family": "memoryless",
            "alphabet": alphabet,
            "positions": positions.iter().map(matrix_of).collect::<Vec<_>>(),
        }),
        JointSourceModel::Markov {
            initial, transition, ..
        } => json!({
            "family": "markov",
            "alphabet": alphabet,
            "initial": initial.probs().chunks(y.size()).map(<[f64]>::to_vec).collect::<Vec<_>>(),
            "transition": rows_of(transition),
        }),
        JointSourceModel::Mixture { components, .. } => json!({
            "family": "mixture",
            "alphabet": alphabet,
            "components": components.iter()
                .map(|c| json!({"weight": c.weight, "model": joint_json(&c.model)}))
                .collect::<Vec<_>>(),
        }),
    }
}

fn channel_json(m: &ChannelModel) -> Value {
    let (x, y) = m.alphabets();
    let alphabet = [x.size(), y.size()];
    match m {
        ChannelModel::Memoryless { positions, .. } => json!({
            "family": "memoryless",
            "alphabet": alphabet,
            "positions": positions.iter().map(rows_of).collect::<Vec<_>>(),
        }),
        ChannelModel::Mixture { components, .. } => json!({
            "family": "mixture",
            "alphabet": alphabet,
            "components": components.iter()
                .map(|c| json!({"weight": c.weight, "model": channel_json(&c.model)}))
                .collect::<Vec<_>>(),
        }),
    }
}
