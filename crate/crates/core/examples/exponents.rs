// Optimized exponents `E(R)` and `J(R)`, and a search over i.i.d. inputs.
//
// ```bash
// cargo run -p gallager-lab --example exponents
// ```

use gallager_lab::exponents::{
    channel_exponent, optimize_iid_input, source_exponent, Rate, DEFAULT_RHO_GRID,
};
use gallager_lab::models::{ChannelModel, InputChannel, JointSourceModel};

pub fn run_example() -> gallager_lab::Result<()> {
    let n = 8;
    let bsc = InputChannel::with_uniform_input(ChannelModel::bsc(0.11))?;
    for r in [0.05, 0.1, 0.2, 0.3] {
        let p = channel_exponent(&bsc, n, Rate::new(r)?, DEFAULT_RHO_GRID)?;
        println!("E({r:.2}) = {:.6} at rho = {:.4}", p.exponent, p.rho.value());
    }

    let ds = JointSourceModel::doubly_symmetric(0.11);
    for r in [0.4, 0.5, 0.6] {
        let p = source_exponent(&ds, n, Rate::new(r)?, DEFAULT_RHO_GRID)?;
        println!("J({r:.2}) = {:.6} at rho = {:.4}", p.exponent, p.rho.value());
    }

    // Near capacity a Z channel prefers fewer ones than a fair coin; at low
    // rates (ρ = 1) the uniform input is optimal for every Z channel.
    let z = ChannelModel::dmc(vec![vec![1.0, 0.0], vec![0.4, 0.6]]);
    let best = optimize_iid_input(&z, 1, Rate::new(0.15)?, 17)?;
    println!(
        "Z channel: P(1) = {:.4}, exponent {:.6}",
        best.input.prob(1),
        best.point.exponent
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
