// The tilted joint law, the slope of `J0`, and solving for `ρ0`.
//
// ```bash
// cargo run -p gallager-lab --example tilted_law
// ```

use gallager_lab::exponents::{j0_derivative, solve_rho0, source_j0, tilted_joint, Rate, Rho};
use gallager_lab::models::JointSourceModel;

pub fn run_example() -> gallager_lab::Result<()> {
    let ds = JointSourceModel::doubly_symmetric(0.11);
    let n = 6;
    for r in [0.1, 0.5, 0.9] {
        let rho = Rho::new(r)?;
        let h = 1e-5;
        let fd = (source_j0(&ds, n, Rho::new(r + h)?)? - source_j0(&ds, n, Rho::new(r - h)?)?) / (2.0 * h);
        let tilted = tilted_joint(&ds, n, rho)?;
        println!(
            "rho {r}: H/n = {:.8}, finite difference {fd:.8}, mass {:.12}",
            j0_derivative(&ds, n, rho)?,
            tilted.total_mass()
        );
    }
    let rho0 = solve_rho0(&ds, n, Rate::new(0.45)?)?;
    println!("slope 0.45 at rho0 = {:.8}", rho0.value());
    println!("slope 0.1 is out of range: {}", solve_rho0(&ds, n, Rate::new(0.1)?).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
