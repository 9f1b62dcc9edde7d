use crate::error::{Error, Result};
use crate::models::{InputChannel, JointSourceModel};

/// `(1/n) ln W^n(y^n|x^n) / P_{Y^n}(y^n)` in nats per symbol.
///
/// Returns `-inf` when the channel cannot produce `y^n` from `x^n`, and an
/// undefined-point error when `P_{Y^n}(y^n) = 0`.
pub fn information_density(pair: &InputChannel, xs: &[usize], ys: &[usize]) -> Result<f64> {
    let ln_w = pair.channel().log_prob(xs, ys)?;
    let ln_py = pair.joint().marginal_y_log_prob(ys)?;
    if ln_py == f64::NEG_INFINITY {
        return Err(Error::UndefinedPoint(format!("P(y^n) = 0 at y^n = {ys:?}")));
    }
    if ln_w == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    Ok((ln_w - ln_py) / xs.len() as f64)
}

/// `(1/n) ln 1 / P_{X^n|Y^n}(x^n|y^n)` in nats per symbol; `+inf` off the support.
pub fn entropy_density(joint: &JointSourceModel, xs: &[usize], ys: &[usize]) -> Result<f64> {
    let ln_p = joint.log_prob(xs, ys)?;
    let ln_py = joint.marginal_y_log_prob(ys)?;
    if ln_py == f64::NEG_INFINITY {
        return Err(Error::UndefinedPoint(format!("P(y^n) = 0 at y^n = {ys:?}")));
    }
    if ln_p == f64::NEG_INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok(-(ln_p - ln_py) / xs.len() as f64)
}
