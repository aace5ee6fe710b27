//! Driving the command-line runner in-process.

use toroidal_lab::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["toroidal", "verify", "lambda", "--lam", "2", "--mu", "4", "--c", "1"], &mut out, &mut err);
    print!("{}", String::from_utf8(out)?);
    println!("exit code {code}");
    assert_eq!(code, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
