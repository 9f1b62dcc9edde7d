// Driving the `gallager` command line in-process.
//
// ```bash
// cargo run -p gallager-lab --example command_line
// ```

use gallager_lab::cli;

pub fn run_example() -> gallager_lab::Result<()> {
    let model = concat!(env!("CARGO_MANIFEST_DIR"), "/models/bsc-0.11.json");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        ["gallager", "e0-curve", "--model", model, "--n", "4", "--rho", "0,0.5,1"],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit {code}");

    out.clear();
    let code = cli::run(
        ["gallager", "verify-t1", "--model", model, "--n", "4", "--grid", "3"],
        &mut out,
        &mut err,
    );
    println!("verify-t1 exit {code}, {} bytes of JSON", out.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
