//! A two-point evaluation module for the loop algebra of `sl_2`.

use toroidal_lab::rep::{verify_integrability, verify_representation, EvaluationModule};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::{RationalVector, Window};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let points = vec![RationalVector::from_ints(&[1]), RationalVector::from_ints(&[2])];
    let module = EvaluationModule::new(build_sl(2)?, points, &[vec![1], vec![1]])?;
    let w = Window::new(2, 1);
    println!("{}", verify_representation(&module, &w));
    let integrable = verify_integrability(&module, &w, 6);
    println!("{integrable} (max nilpotency index {})", integrable.stats["max_nilpotency_index"]);
    println!("{}", module.irreducibility_certificate(&w));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
