//! Real roots, co-roots and reflections for the affine weight lattice.

use toroidal_lab::roots::{coroot, evaluate, reflect, weyl_orbit, RealRoot, Weight};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::dv;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_sl(2)?;
    let gamma = RealRoot::new(&g, &[1], &dv(&[1, 0]))?;
    let lambda = Weight::from_ints(&[1], &[0, 0], &[1, 0]);
    let h = coroot(&g, &gamma);
    println!("λ(γ^∨) = {}", evaluate(&lambda, &h));
    let image = reflect(&g, &gamma, &lambda);
    println!("s_γ λ = {image}");
    assert_eq!(reflect(&g, &gamma, &image), lambda);
    let orbit = weyl_orbit(&g, &lambda, &[gamma, RealRoot::new(&g, &[1], &dv(&[0, 0]))?], 3)?;
    println!("{} weights after 3 rounds (truncated: {})", orbit.weights.len(), orbit.truncated);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
