//! Exhaustive enumeration over `X^n × Y^n`, parallel over output sequences.

use crate::error::Result;
use crate::logspace::{check_pair_budget, sequence_count, unrank};
use crate::models::JointSourceModel;
use crate::parallel::ordered_map;

/// Calls `f(y^n, ln P(y^n))` for every `y^n` of positive marginal probability,
/// returning the results in rank order.
pub(crate) fn map_outputs<T: Send>(
    joint: &JointSourceModel,
    n: usize,
    budget: u128,
    f: impl Fn(&[usize], f64) -> T + Sync + Send,
) -> Result<Vec<T>> {
    let (ax, ay) = joint.alphabets();
    check_pair_budget(ax.size(), ay.size(), n, budget)?;
    let ny = ay.size();
    let count = sequence_count(ny, n).expect("checked by budget") as u64;
    let results = ordered_map(count, |r| {
        let mut ys = vec![0; n];
        unrank(r, ny, &mut ys);
        let ln_py = joint.marginal_y_log_prob_unchecked(&ys);
        (ln_py > f64::NEG_INFINITY).then(|| f(&ys, ln_py))
    });
    Ok(results.into_iter().flatten().collect())
}

/// Visits every `x^n` over `size` symbols in rank order with a reused buffer.
pub(crate) fn for_each_input(size: usize, n: usize, mut f: impl FnMut(&[usize])) {
    let count = sequence_count(size, n).expect("checked by budget") as u64;
    let mut xs = vec![0; n];
    for r in 0..count {
        unrank(r, size, &mut xs);
        f(&xs);
    }
}
