//! The `λ(r, s)` functional equation: the constant family, its
//! associativity constraint, and the exact kernel on a window.

use toroidal_lab::lambda::{lambda_nullspace, verify_lemma_filters, verify_thm91_family};
use toroidal_lab::{int, Window};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w = Window::new(2, 2);
    println!("{}", verify_thm91_family(&int(2), &int(4), &int(1), &w));
    let bad = verify_thm91_family(&int(1), &int(1), &int(2), &w);
    println!("{bad}");
    assert!(!bad.passed());
    let ns = lambda_nullspace(&w, false)?;
    println!("kernel dimension {} over {} unknowns; constant family rank {}", ns.dim(), ns.pairs.len(), ns.family_rank);
    println!("{}", verify_lemma_filters(&ns));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
