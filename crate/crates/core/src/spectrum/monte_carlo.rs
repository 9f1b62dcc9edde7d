use super::exact::check_n;
use super::{SpectrumCdf, SpectrumTarget};
use crate::error::{Error, Result};
use crate::parallel::ordered_map;
use crate::rng::{stream_rng, DOMAIN_SPECTRUM};

/// Empirical spectrum from `samples` i.i.d. draws of `(X^n, Y^n)`.
///
/// Draw `i` uses its own random stream derived from `(seed, i)`, so the sample
/// vector is the same for any number of workers.
pub fn monte_carlo_spectrum<'a>(
    target: impl Into<SpectrumTarget<'a>>,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<SpectrumCdf> {
    let target = target.into();
    check_n(n)?;
    if samples == 0 {
        return Err(Error::Input("sample count must be at least 1".into()));
    }
    let joint = target.joint();
    let values = ordered_map(samples as u64, |i| {
        let mut rng = stream_rng(seed, DOMAIN_SPECTRUM, i, 0);
        let (xs, ys) = joint.sample(&mut rng, n);
        let ln_p = joint.log_prob_unchecked(&xs, &ys);
        let ln_py = joint.marginal_y_log_prob_unchecked(&ys);
        target.scaled_density(&xs, &ys, ln_p, ln_py) / n as f64
    });
    Ok(SpectrumCdf::sampled(n, target.kind(), values, seed))
}
