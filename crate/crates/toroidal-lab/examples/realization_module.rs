//! `V(λ) ⊗ V_N ⊗ A` as a module for the Hamiltonian EALA, and its
//! highest weight space.

use toroidal_lab::rep::{
    realization_module, verify_center_trivial, verify_representation, verify_top_dimension, Fiber, JetModule, Profile, SpRep,
};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::Window;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let profile = Profile::from_ratios([(1, 1), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2)]);
    let jet = JetModule::unshifted(SpRep::new(1, Fiber::Defining)?, profile);
    let module = realization_module(build_sl(2)?, &[1], jet)?;
    let w = Window::new(1, 2);
    println!("{}", verify_representation(&module, &w));
    println!("{}", verify_center_trivial(&module, &w));
    println!("{}", verify_top_dimension(&module, &w)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
