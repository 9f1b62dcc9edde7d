//! Log-domain arithmetic and sequence enumeration helpers.
//!
//! Every probability in the crate is a natural log; zero is `-inf`.

use crate::error::{Error, Result};

/// Largest number of points an exhaustive enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 24;

#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a > b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// `ln Σ exp(v)` with max shifting and pairwise summation of the shifted terms.
///
/// The result depends only on the order of `values`, so callers that collect
/// parallel results in index order get bit-identical sums for any worker count.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let shifted: Vec<f64> = values.iter().map(|v| (v - max).exp()).collect();
    max + pairwise_sum(&shifted).ln()
}

/// Pairwise (tree) summation; fixed split points make it order-deterministic.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        // `Iterator::sum` of an empty f64 slice is -0.0
        return values.iter().fold(0.0, |a, b| a + b);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// `-p ln p` with the `0 ln 0 = 0` convention, given `ln p`.
#[inline]
pub fn neg_plogp(log_p: f64) -> f64 {
    if log_p == f64::NEG_INFINITY {
        0.0
    } else {
        // `+ 0.0` maps the -0.0 of a certain event to 0.0
        -log_p.exp() * log_p + 0.0
    }
}

/// Number of length-`n` sequences over `size` symbols, or `None` on overflow.
pub fn sequence_count(size: usize, n: usize) -> Option<u128> {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.checked_mul(size as u128)?;
    }
    Some(total)
}

/// Fails with a capacity error when `(x_size * y_size)^n` exceeds `budget`.
pub fn check_pair_budget(x_size: usize, y_size: usize, n: usize, budget: u128) -> Result<()> {
    match sequence_count(x_size * y_size, n) {
        Some(needed) if needed <= budget => Ok(()),
        Some(needed) => Err(Error::Capacity { needed, budget }),
        None => Err(Error::Capacity {
            needed: u128::MAX,
            budget,
        }),
    }
}

/// Writes the base-`size` digits of `rank` into `out`, most significant first.
#[inline]
pub fn unrank(mut rank: u64, size: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = (rank % size as u64) as usize;
        rank /= size as u64;
    }
}

/// Inverse of [`unrank`]: the first symbol is the most significant digit.
pub fn rank(seq: &[usize], size: usize) -> u64 {
    seq.iter().fold(0u64, |acc, &s| acc * size as u64 + s as u64)
}

/// Iterates over all length-`n` sequences in rank order.
pub fn all_sequences(size: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = sequence_count(size, n).expect("sequence count overflow") as u64;
    (0..count).map(move |r| {
        let mut v = vec![0; n];
        unrank(r, size, &mut v);
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn log_sum_exp_handles_empty_and_neg_inf() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY, f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY, 0.0]), 0.0);
    }

    #[test]
    fn log_sum_exp_large_arguments() {
        let v = log_sum_exp(&[1234.0, 1232.0]);
        assert!((v - (1232.0 + (2f64.exp() + 1.0).ln())).abs() < 1e-12);
    }

    #[test]
    fn log_add_exp_matches_naive() {
        let a = 0.5f64;
        let b = 2f64;
        assert!((log_add_exp(a, b) - (a.exp() + b.exp()).ln()).abs() < 1e-15);
    }

    #[test]
    fn rank_roundtrip_small() {
        let mut buf = [0; 4];
        unrank(rank(&[2, 0, 1, 2], 3), 3, &mut buf);
        assert_eq!(buf, [2, 0, 1, 2]);
        assert_eq!(all_sequences(2, 3).count(), 8);
    }

    #[test]
    fn budget_errors() {
        assert!(check_pair_budget(2, 2, 12, DEFAULT_ENUMERATION_BUDGET).is_ok());
        assert!(matches!(
            check_pair_budget(2, 2, 13, DEFAULT_ENUMERATION_BUDGET),
            Err(Error::Capacity { .. })
        ));
        assert!(check_pair_budget(4, 4, 200, DEFAULT_ENUMERATION_BUDGET).is_err());
    }

    proptest! {
        #[test]
        fn log_sum_exp_agrees_with_linear_sum(v in prop::collection::vec(-30.0f64..30.0, 1..200)) {
            let direct: f64 = v.iter().map(|x| x.exp()).sum::<f64>().ln();
            prop_assert!((log_sum_exp(&v) - direct).abs() < 1e-12);
        }
    }
}
