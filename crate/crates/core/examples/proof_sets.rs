// The set diagnostic behind both bounds: outputs whose conditional tail is
// at least `√ε` carry at most `√ε` of the output mass.
//
// ```bash
// cargo run -p gallager-lab --example proof_sets
// ```

use gallager_lab::models::{ChannelModel, InputChannel, JointSourceModel};
use gallager_lab::spectrum::proof_set_diagnostic;

pub fn run_example() -> gallager_lab::Result<()> {
    let bsc = InputChannel::with_uniform_input(ChannelModel::bsc(0.3))?;
    for t in [0.0, 0.05, 0.1] {
        let r = proof_set_diagnostic(&bsc, 6, t)?;
        println!("channel t = {t}: P(B^c) = {:.5} <= {:.5}", r.mass_b_complement, r.bound_sqrt_epsilon);
    }
    let ds = JointSourceModel::doubly_symmetric(0.25);
    for t in [0.6, 0.65] {
        let r = proof_set_diagnostic(&ds, 6, t)?;
        println!("source  t = {t}: P(B^c) = {:.5} <= {:.5}", r.mass_b_complement, r.bound_sqrt_epsilon);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
