//! Building the auxiliary degree `k` with `(r, bar k) ≠ 0` and `(k, bar s) = 0`.

use toroidal_lab::lambda::construct_k;
use toroidal_lab::{bar, dv};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (r, s) in [(dv(&[0, 1, 0, 0]), dv(&[1, 0, 0, 0])), (dv(&[1, 1, 0, 0]), dv(&[1, 0, 0, 0])), (dv(&[2, 1, 3, -1]), dv(&[1, 0, 2, 1]))] {
        match construct_k(&r, &s) {
            Ok(k) => println!("r={r} s={s}: k={k}, (r,bar k)={}, (k,bar s)={}", r.dot(&bar(&k)?), k.dot(&bar(&s)?)),
            Err(e) => println!("r={r} s={s}: {e}"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
