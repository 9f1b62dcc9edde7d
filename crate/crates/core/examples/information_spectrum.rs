// Exact and sampled laws of the information density, and their tails.
//
// ```bash
// cargo run -p gallager-lab --example information_spectrum
// ```

use gallager_lab::models::{ChannelModel, InputChannel};
use gallager_lab::spectrum::{epsilon_at, exact_spectrum, monte_carlo_spectrum, Tail};

pub fn run_example() -> gallager_lab::Result<()> {
    let bsc = InputChannel::with_uniform_input(ChannelModel::bsc(0.11))?;
    let n = 12;
    let exact = exact_spectrum(&bsc, n)?;
    println!("{} atoms, mean {:.6} (I = 0.346632)", exact.atoms().len(), exact.mean());

    let sampled = monte_carlo_spectrum(&bsc, n, 20_000, 7)?;
    for t in [0.1, 0.2, 0.3] {
        let e = epsilon_at(&exact, t, Tail::BelowStrict)?;
        let m = epsilon_at(&sampled, t, Tail::BelowStrict)?;
        println!(
            "P(i < {t}) exact {:.5}, sampled {:.5} +- {:.5}",
            e.epsilon,
            m.epsilon,
            m.ci_halfwidth.unwrap_or(0.0)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
