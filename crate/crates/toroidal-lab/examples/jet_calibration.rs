//! Jet modules `V_N ⊗ A` for `H_N`: calibrating the sigma profile and
//! checking the defining relations.

use toroidal_lab::rep::{calibrate_jet_coefficients, verify_jet_module, verify_sp_identity, Fiber, JetModule, Profile, SpRep};
use toroidal_lab::Window;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fiber = SpRep::new(1, Fiber::Defining)?;
    let w = Window::new(2, 2);
    let cal = calibrate_jet_coefficients(1, &fiber, &w)?;
    println!("calibrated profile {} ({} of {} pass, {} distinct actions)", cal.profile, cal.passing, cal.searched, cal.distinct_actions);
    let jet = JetModule::unshifted(fiber.clone(), cal.profile.clone());
    println!("{}", verify_jet_module(&jet, &w));
    println!("{}", verify_sp_identity(&jet, &w));
    let literal = JetModule::unshifted(fiber, Profile::literal());
    println!("literal profile: {}", verify_jet_module(&literal, &w));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
