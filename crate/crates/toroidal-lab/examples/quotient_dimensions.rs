//! Graded dimensions of `Z/K`, `Z/K_M` and the contact algebra.

use toroidal_lab::algebra::{component_dimension, AlgebraSpec, Family, SpaceTag};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::{dv, in_g};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_sl(2)?;
    let h = AlgebraSpec::new(Family::TauH, 4, Some(g.clone()))?;
    for r in [dv(&[0, 0, 0, 0]), dv(&[1, 0, -2, 1])] {
        println!("dim (Z/K){r} = {}", component_dimension(&h, SpaceTag::ZModK, &r)?);
    }
    let d = AlgebraSpec::new(Family::TauD, 3, Some(g))?;
    for r in [dv(&[0, 0, 0]), dv(&[2, -2, 2]), dv(&[1, 0, 0])] {
        println!(
            "r={r} in G: {:<5} dim (Z/K_M)_r = {}, dim (D_M)_r = {}",
            in_g(&r)?,
            component_dimension(&d, SpaceTag::ZModKM, &r)?,
            component_dimension(&d, SpaceTag::DM, &r)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
