//! A level-zero induced module from a jet top, truncated by depth, and its
//! window-approximate simple quotient.

use toroidal_lab::algebra::Decomposition;
use toroidal_lab::rep::{induced_module, simple_quotient_window, Fiber, JetModule, Profile, SpRep, Top};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::Window;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let jet = JetModule::unshifted(SpRep::new(1, Fiber::Trivial)?, Profile::literal());
    let top = Top::new(build_sl(2)?, &[1], jet)?;
    let w = Window::new(1, 2);
    let module = induced_module(top, Decomposition::LevelZero, 2, &w)?;
    println!("graded dimensions {:?}", module.graded_dims());
    let quotient = simple_quotient_window(&module)?;
    println!("{}: {:?}", quotient.label, quotient.dims);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
