//! Chevalley data for `sl_n` and its finite-dimensional irreducibles.

use toroidal_lab::simple_lie::{build_sl, irrep};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_sl(3)?;
    println!("sl3: dim {}, rank {}, {} roots", g.dim, g.rank, g.roots.len());
    println!("Cartan matrix {:?}", g.cartan_matrix());
    assert!(g.audit());

    let natural = irrep(&g, &[1, 0])?;
    println!("V(1,0) has dim {} and bracket check {}", natural.dim, natural.check_bracket(&g));
    assert_eq!(natural.dim, 3);

    let v3 = irrep(&build_sl(2)?, &[2])?;
    println!("sl2 V(2) weights {:?}", v3.weights);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
