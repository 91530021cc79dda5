// The command-line front end driven in-process.
//
//     cargo run --example cli

use lcc_control::cli::run;

/// Returns the exit codes of a solve and of a rejected verify.
pub fn run_example() -> (i32, i32) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let solved = run(["lcc", "solve", "--gen", "chain:9", "--ell", "2"], &mut out, &mut err);
    let rejected = run(
        ["lcc", "verify", "--gen", "cycle:3", "--ell", "1", "--inputs", "0"],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    (solved, rejected)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
