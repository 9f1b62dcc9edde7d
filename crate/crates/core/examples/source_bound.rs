// The finite-`n` source bound for a Markov pair and a mixed pair.
//
// ```bash
// cargo run -p gallager-lab --example source_bound
// ```

use gallager_lab::exponents::{verify_theorem2, Rate};
use gallager_lab::models::{JointSourceModel, Pmf};

pub fn run_example() -> gallager_lab::Result<()> {
    let markov = JointSourceModel::markov(
        2,
        2,
        Pmf::new(vec![0.4, 0.1, 0.1, 0.4]),
        vec![
            vec![0.7, 0.1, 0.1, 0.1],
            vec![0.2, 0.5, 0.1, 0.2],
            vec![0.2, 0.1, 0.5, 0.2],
            vec![0.1, 0.1, 0.1, 0.7],
        ],
    );
    let mixed = JointSourceModel::mixture(vec![
        (0.5, JointSourceModel::doubly_symmetric(0.05)),
        (0.5, JointSourceModel::doubly_symmetric(0.2)),
    ]);
    for (name, joint) in [("markov", &markov), ("mixture", &mixed)] {
        for t in [0.5, 0.6] {
            let r = verify_theorem2(joint, 6, Rate::new(t)?)?;
            println!(
                "{name:8} t = {t}: eps_n {:.4}, rho_n {:.4}, J0 {:.5} <= {:.5}",
                r.epsilon_n,
                r.rho_n.value(),
                r.lhs,
                r.rhs
            );
            assert!(r.holds);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
