//! Exact scalars, degree vectors and the bar / underline maps.

use toroidal_lab::{bar, dv, frac, in_g, underline, Window};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = frac(3, 4) * frac(2, 3) - frac(1, 2);
    println!("3/4 * 2/3 - 1/2 = {x}");
    assert!(num::Zero::is_zero(&x));

    let r = dv(&[1, 2, -3, 4]);
    let b = bar(&r)?;
    println!("bar{r} = {b}, bar(bar r) = {}", bar(&b)?);
    assert_eq!(bar(&b)?, r.neg());

    let s = dv(&[1, -1, 2]);
    println!("underline{s} = {}, in G: {}", underline(&s)?, in_g(&s)?);

    let w = Window::new(2, 2);
    println!("window R=2, N=2 has {} degrees", w.len());
    assert_eq!(w.len(), 25);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
