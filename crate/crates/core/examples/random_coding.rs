// Random codes under ML decoding against `exp(-n E(R))`.
//
// ```bash
// cargo run -p gallager-lab --example random_coding
// ```

use gallager_lab::codingsim::{simulate_channel_code, ChannelSimConfig};
use gallager_lab::exponents::Rate;
use gallager_lab::models::{ChannelModel, InputChannel};

pub fn run_example() -> gallager_lab::Result<()> {
    let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.11))?;
    for r in [0.05, 0.1, 0.15] {
        let res = simulate_channel_code(&ChannelSimConfig {
            pair: &pair,
            n: 16,
            rate: Rate::new(r)?,
            codebooks: 100,
            transmissions: 200,
            seed: 1,
        })?;
        println!(
            "R = {r}: M = {}, error {:.4} +- {:.4}, bound {:.4}",
            res.codewords, res.empirical_error, res.ci_halfwidth, res.analytic_bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
