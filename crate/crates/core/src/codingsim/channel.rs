use rand::Rng;

use super::{argmax_random_tie, check_counts, code_size, SimResult};
use crate::error::{Error, Result};
use crate::exponents::{channel_exponent, Rate, DEFAULT_RHO_GRID};
use crate::logspace::DEFAULT_ENUMERATION_BUDGET;
use crate::models::InputChannel;
use crate::parallel::ordered_map;
use crate::rng::{stream_rng, DOMAIN_CODEBOOK, DOMAIN_TRANSMISSION};

/// A random-coding experiment: `codebooks` independent codebooks of
/// `max(2, ⌈exp(nR)⌉)` codewords drawn from the input law, each used for
/// `transmissions` messages.
#[derive(Clone, Copy, Debug)]
pub struct ChannelSimConfig<'a> {
    pub pair: &'a InputChannel,
    pub n: usize,
    pub rate: Rate,
    pub codebooks: u64,
    pub transmissions: u64,
    pub seed: u64,
}

/// Ensemble-average ML error against `exp(-n E(R))` for the same input law.
///
/// Each transmission draws a uniform message, passes its codeword through the
/// channel and decodes by maximum `ln W^n(y|x)` over the codebook; ties
/// (including identical codewords) are broken uniformly at random.
pub fn simulate_channel_code(cfg: &ChannelSimConfig<'_>) -> Result<SimResult> {
    check_counts(cfg.n, &[("codebooks", cfg.codebooks), ("transmissions", cfg.transmissions)])?;
    let n = cfg.n;
    let limit = DEFAULT_ENUMERATION_BUDGET / n as u128;
    let m = code_size(n, cfg.rate.nats(), limit)?.max(2);
    let trials = cfg
        .codebooks
        .checked_mul(cfg.transmissions)
        .ok_or_else(|| Error::Input("too many trials".into()))?;
    let input = cfg.pair.input();
    let channel = cfg.pair.channel();

    let errors: Vec<u64> = ordered_map(cfg.codebooks, |c| {
        let mut rng = stream_rng(cfg.seed, DOMAIN_CODEBOOK, c, 0);
        let book: Vec<Vec<usize>> = (0..m).map(|_| input.sample(&mut rng, n)).collect();
        let mut metrics = vec![0.0; m as usize];
        let mut wrong = 0;
        for t in 0..cfg.transmissions {
            let mut rng = stream_rng(cfg.seed, DOMAIN_TRANSMISSION, c, t);
            let sent = rng.random_range(0..m as usize);
            let ys = channel.transmit(&mut rng, &book[sent]);
            for (metric, word) in metrics.iter_mut().zip(&book) {
                *metric = channel.log_prob_unchecked(word, &ys);
            }
            if argmax_random_tie(&metrics, &mut rng) != sent {
                wrong += 1;
            }
        }
        wrong
    });

    let point = channel_exponent(cfg.pair, n, cfg.rate, DEFAULT_RHO_GRID)?;
    Ok(SimResult::new(
        errors.iter().sum(),
        trials,
        point.exponent,
        point.rho.value(),
        n,
        m,
    ))
}
