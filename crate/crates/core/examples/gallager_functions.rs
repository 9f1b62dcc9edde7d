// `E0` and `J0` at finite blocklength, with two closed forms as a sanity check.
//
// ```bash
// cargo run -p gallager-lab --example gallager_functions
// ```

use gallager_lab::exponents::{e0_curve, gallager_e0, j0_curve, Rho};
use gallager_lab::models::{ChannelModel, InputChannel, JointSourceModel};

pub fn run_example() -> gallager_lab::Result<()> {
    let bsc = InputChannel::with_uniform_input(ChannelModel::bsc(0.11))?;
    let rhos: Vec<f64> = (0..=4).map(|k| k as f64 / 4.0).collect();
    for (rho, e0) in e0_curve(&bsc, 6, &rhos)?.points {
        println!("E0({rho:.2}) = {e0:.9}");
    }
    let closed = 2f64.ln() - 2.0 * (0.11f64.sqrt() + 0.89f64.sqrt()).ln();
    println!("E0(1) closed form = {closed:.9}");

    let identity = InputChannel::with_uniform_input(ChannelModel::identity(2))?;
    println!("identity E0(0.5) = {:.9} (= 0.5 ln 2)", gallager_e0(&identity, 3, Rho::new(0.5)?)?);

    // A Markov pair has no per-letter shortcut, so this enumerates all 4^6 pairs.
    let markov = JointSourceModel::markov(
        2,
        2,
        gallager_lab::models::Pmf::new(vec![0.4, 0.1, 0.1, 0.4]),
        vec![
            vec![0.7, 0.1, 0.1, 0.1],
            vec![0.2, 0.5, 0.1, 0.2],
            vec![0.2, 0.1, 0.5, 0.2],
            vec![0.1, 0.1, 0.1, 0.7],
        ],
    );
    for (rho, j0) in j0_curve(&markov, 6, &rhos)?.points {
        println!("J0({rho:.2}) = {j0:.9}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
