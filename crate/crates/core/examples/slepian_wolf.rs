// Random binning with side information, above and below `H(X|Y)`.
//
// ```bash
// cargo run -p gallager-lab --example slepian_wolf
// ```

use gallager_lab::codingsim::{simulate_slepian_wolf, SlepianWolfConfig};
use gallager_lab::exponents::Rate;
use gallager_lab::models::JointSourceModel;

pub fn run_example() -> gallager_lab::Result<()> {
    let ds = JointSourceModel::doubly_symmetric(0.11);
    for (n, r) in [(8, 0.55), (10, 0.55), (12, 0.55), (12, 0.2)] {
        let res = simulate_slepian_wolf(&SlepianWolfConfig {
            joint: &ds,
            n,
            rate: Rate::new(r)?,
            bin_seed: 17,
            trials: 2_000,
            seed: 3,
        })?;
        println!(
            "n = {n:2}, R = {r}: {} bins, error {:.4}, reference {:.4}",
            res.codewords, res.empirical_error, res.analytic_bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
