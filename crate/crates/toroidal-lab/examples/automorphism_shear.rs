//! `GL_N(Z)` acting on degrees: the shear and a random unimodular matrix
//! as automorphisms of the full toroidal algebra.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toroidal_lab::algebra::{AlgebraSpec, Family};
use toroidal_lab::automorphism::{random_unimodular, shear_matrix, verify_homomorphism};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::Window;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = AlgebraSpec::new(Family::FullToroidal, 2, Some(build_sl(2)?))?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for b in [shear_matrix(2, 1, 2)?, random_unimodular(2, 6, &mut rng)] {
        let rep = verify_homomorphism(&spec, &b, &Window::new(1, 2));
        println!("B = {b}: {rep}");
        assert!(rep.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
