//! Counter-based random streams.
//!
//! Every random draw in a simulation comes from a ChaCha8 stream keyed by the
//! user seed and selected by a stream id derived from the draw's indices. Any
//! partition of the work over threads therefore sees the same numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 output function.
///
/// ```text
/// z = x + 0x9E3779B97F4A7C15
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// return z ^ (z >> 31)
/// ```
/// All arithmetic wraps modulo 2^64.
#[inline]
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) const DOMAIN_SPECTRUM: u64 = 1;
pub(crate) const DOMAIN_CODEBOOK: u64 = 2;
pub(crate) const DOMAIN_TRANSMISSION: u64 = 3;
pub(crate) const DOMAIN_SLEPIAN_WOLF: u64 = 4;

/// Independent generator for draw `(a, b)` within `domain`.
pub fn stream_rng(seed: u64, domain: u64, a: u64, b: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(splitmix64(splitmix64(splitmix64(domain) ^ a) ^ b));
    rng
}
