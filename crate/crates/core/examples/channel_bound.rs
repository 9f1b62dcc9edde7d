// The finite-`n` channel bound over a threshold grid, and the growth of `n ρ_n`.
//
// ```bash
// cargo run -p gallager-lab --example channel_bound
// ```

use gallager_lab::exponents::{verify_theorem1, Rate};
use gallager_lab::models::{ChannelModel, InputChannel};

pub fn run_example() -> gallager_lab::Result<()> {
    let mixture = ChannelModel::mixture(vec![(0.5, ChannelModel::bsc(0.02)), (0.5, ChannelModel::bsc(0.3))]);
    let pair = InputChannel::with_uniform_input(mixture)?;
    println!("   t   eps_n   rho_n      E0     bound   slack");
    for k in 1..=5 {
        let t = 0.1 * k as f64 / 2.0;
        let r = verify_theorem1(&pair, 8, Rate::new(t)?)?;
        println!(
            "{t:.2}  {:.4}  {:.4}  {:.5}  {:.5}  {:+.5}",
            r.epsilon_n,
            r.rho_n.value(),
            r.lhs,
            r.rhs,
            r.slack
        );
        assert!(r.holds);
    }

    let bsc = InputChannel::with_uniform_input(ChannelModel::bsc(0.11))?;
    for n in [4, 8, 16] {
        let r = verify_theorem1(&bsc, n, Rate::new(0.29)?)?;
        println!("n = {n:2}: n rho_n = {:.4}", n as f64 * r.rho_n.value());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
