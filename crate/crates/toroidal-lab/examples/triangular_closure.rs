//! Triangular decompositions of the Hamiltonian EALA and their closure rules.

use toroidal_lab::algebra::{triangular_part, verify_closure, AlgebraSpec, BasisSymbol, Decomposition, Family};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::{dv, Window};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_sl(2)?;
    let e = g.basis_index(1, 2).ok_or("no e in sl2")?;
    let spec = AlgebraSpec::new(Family::TauH, 2, Some(g))?;
    let x = BasisSymbol::G(e, dv(&[2, 1]));
    println!("{x} lies in part {}", triangular_part(&spec, Decomposition::N2, &x)?);
    for dec in [Decomposition::N2, Decomposition::LevelZero] {
        let rep = verify_closure(&spec, dec, &Window::new(1, 2));
        println!("{rep}");
        assert!(rep.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
