//! `[h_r, h_s] = (bar r, s) h_{r+s}` in `H_N`; inside the Hamiltonian EALA
//! the same bracket picks up a central term. Ends with a Jacobi sweep.

use toroidal_lab::algebra::{bracket, verify_jacobi, AlgebraElement, AlgebraSpec, BasisSymbol, Family};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::{bar, dv, Scalar, Window};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let hn = AlgebraSpec::new(Family::HN, 2, None)?;
    let spec = AlgebraSpec::new(Family::TauH, 2, Some(build_sl(2)?))?;
    let one = Scalar::from_int(1);
    let (r, s) = (dv(&[1, 2]), dv(&[-1, 1]));
    let c = Scalar::from_int(bar(&r)?.dot(&s));
    for spec in [&hn, &spec] {
        let hr = AlgebraElement::symbol(spec, &BasisSymbol::h(&r)?, &one)?;
        let hs = AlgebraElement::symbol(spec, &BasisSymbol::h(&s)?, &one)?;
        let lhs = bracket(spec, &hr, &hs)?;
        println!("{}: [h{r}, h{s}] = {}", spec.label(), lhs.render(spec));
        if spec.family == Family::HN {
            assert_eq!(lhs, AlgebraElement::symbol(spec, &BasisSymbol::h(&r.add(&s))?, &c)?);
        }
    }

    let report = verify_jacobi(&spec, &Window::new(1, 2));
    println!("{report}");
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
