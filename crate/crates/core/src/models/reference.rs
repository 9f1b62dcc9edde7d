use serde::Serialize;

use super::{InputChannel, JointSourceModel};

/// Closed-form limits of the information spectrum, in nats per symbol.
///
/// `inf_mutual_info` is the spectral inf-mutual information rate and
/// `sup_cond_entropy` the spectral conditional sup-entropy rate. Either is
/// `None` when no closed form is implemented for the model family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ModelReference {
    pub inf_mutual_info: Option<f64>,
    pub sup_cond_entropy: Option<f64>,
}

/// Stationary memoryless joints give the single-letter values; a mixture of
/// them gives the worst component (smallest information, largest entropy).
pub fn reference_rates(joint: &JointSourceModel) -> ModelReference {
    if let Some(p) = joint.single_letter() {
        return ModelReference {
            inf_mutual_info: Some(p.mutual_information().max(0.0)),
            sup_cond_entropy: Some(p.conditional_entropy().max(0.0)),
        };
    }
    if let JointSourceModel::Mixture { components, .. } = joint {
        let letters: Option<Vec<_>> = components.iter().map(|c| c.model.single_letter()).collect();
        if let Some(letters) = letters {
            let info = letters
                .iter()
                .map(|p| p.mutual_information())
                .fold(f64::INFINITY, f64::min);
            let ent = letters
                .iter()
                .map(|p| p.conditional_entropy())
                .fold(f64::NEG_INFINITY, f64::max);
            return ModelReference {
                inf_mutual_info: Some(info.max(0.0)),
                sup_cond_entropy: Some(ent.max(0.0)),
            };
        }
    }
    ModelReference::default()
}

pub fn reference_rates_pair(pair: &InputChannel) -> ModelReference {
    reference_rates(pair.joint())
}
