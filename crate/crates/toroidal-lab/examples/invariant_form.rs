//! The invariant form on the Hamiltonian EALA: symmetry, invariance,
//! graded non-degeneracy and the `D`/`K` pairing.

use toroidal_lab::algebra::{AlgebraElement, AlgebraSpec, BasisSymbol, Family};
use toroidal_lab::forms::{form, verify_form};
use toroidal_lab::simple_lie::build_sl;
use toroidal_lab::{bar, dv, Scalar, Window};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = AlgebraSpec::new(Family::TauH, 2, Some(build_sl(2)?))?;
    let rep = verify_form(&spec, &Window::new(1, 2));
    println!("{rep}");
    assert!(rep.passed());

    let r = dv(&[1, 1]);
    let s = r.neg();
    let one = Scalar::from_int(1);
    let d = AlgebraElement::symbol(&spec, &BasisSymbol::D(bar(&r)?.to_rational(), r.clone()), &one)?;
    let k = AlgebraElement::symbol(&spec, &BasisSymbol::K(bar(&s)?.to_rational(), s.clone()), &one)?;
    let v = form(&spec, &d, &k)?;
    println!("(D(bar r, r) | K(bar s, s)) = {v} at r={r}, s={s}");
    assert_eq!(v, Scalar::from_int(-s.dot(&s)));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
