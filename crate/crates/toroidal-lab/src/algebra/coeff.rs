//! Coefficient types for the structure-tensor kernels.
//!
//! `Scalar` is always exact. `Q` is an unreduced `i128` fraction used in the
//! hot loops of window sweeps; an overflow raises a thread-local flag and the
//! caller redoes the affected computation with `Scalar`.

use std::cell::Cell;
use std::fmt;

use num::integer::Integer;
use num::traits::Zero;

use crate::scalar::Scalar;

pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn ratio(n: i64, d: i64) -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn to_scalar(&self) -> Scalar;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, k: i64) -> Self;
    fn neg(&self) -> Self;
    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        <Scalar as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn ratio(n: i64, d: i64) -> Self {
        Scalar::new(n, d)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn to_scalar(&self) -> Scalar {
        self.clone()
    }
    fn add(&self, o: &Self) -> Self {
        if Zero::is_zero(self) {
            return o.clone();
        }
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, k: i64) -> Self {
        self * &Scalar::from_int(k)
    }
    fn neg(&self) -> Self {
        -self
    }
}

thread_local! {
    static OVERFLOW: Cell<bool> = const { Cell::new(false) };
}

/// Clears the overflow flag and returns its previous value.
pub fn take_overflow() -> bool {
    OVERFLOW.with(|f| f.replace(false))
}

fn flag() -> Q {
    OVERFLOW.with(|f| f.set(true));
    Q { n: 0, d: 1 }
}

const REDUCE_AT: i128 = 1 << 60;

#[derive(Clone, Copy)]
pub struct Q {
    n: i128,
    d: i128,
}

impl Q {
    fn norm(n: i128, d: i128) -> Q {
        if d.abs() >= REDUCE_AT || n.abs() >= REDUCE_AT {
            let g = n.gcd(&d);
            if g > 1 {
                return Q { n: n / g, d: d / g };
            }
        }
        Q { n, d }
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        if self.d == o.d {
            return self.n == o.n;
        }
        match (self.n.checked_mul(o.d), o.n.checked_mul(self.d)) {
            (Some(a), Some(b)) => a == b,
            _ => self.to_scalar() == o.to_scalar(),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scalar())
    }
}

impl Coeff for Q {
    fn zero() -> Self {
        Q { n: 0, d: 1 }
    }
    fn is_zero(&self) -> bool {
        self.n == 0
    }
    fn from_i64(n: i64) -> Self {
        Q { n: n as i128, d: 1 }
    }
    fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        if d < 0 {
            Q { n: -(n as i128), d: -(d as i128) }
        } else {
            Q { n: n as i128, d: d as i128 }
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        match s.as_small() {
            Some((n, d)) => Q::ratio(n, d),
            None => flag(),
        }
    }
    fn to_scalar(&self) -> Scalar {
        let g = self.n.gcd(&self.d).max(1);
        let (n, d) = (self.n / g, self.d / g);
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar::new(n, d),
            _ => Scalar::from_big(num::rational::BigRational::new(n.into(), d.into())),
        }
    }
    fn add(&self, o: &Self) -> Self {
        if self.n == 0 {
            return *o;
        }
        if o.n == 0 {
            return *self;
        }
        if self.d == o.d {
            return match self.n.checked_add(o.n) {
                Some(n) => Q::norm(n, self.d),
                None => flag(),
            };
        }
        let a = self.n.checked_mul(o.d);
        let b = o.n.checked_mul(self.d);
        let d = self.d.checked_mul(o.d);
        match (a, b, d) {
            (Some(a), Some(b), Some(d)) => match a.checked_add(b) {
                Some(n) => Q::norm(n, d),
                None => flag(),
            },
            _ => flag(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.n == 0 || o.n == 0 {
            return Q::zero();
        }
        match (self.n.checked_mul(o.n), self.d.checked_mul(o.d)) {
            (Some(n), Some(d)) => Q::norm(n, d),
            _ => flag(),
        }
    }
    fn scale(&self, k: i64) -> Self {
        match self.n.checked_mul(k as i128) {
            Some(n) => Q::norm(n, self.d),
            None => flag(),
        }
    }
    fn neg(&self) -> Self {
        Q { n: -self.n, d: self.d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_matches_scalar() {
        let a = Q::ratio(3, -4);
        let b = Q::ratio(5, 6);
        assert_eq!(a.add(&b).to_scalar(), Scalar::new(1, 12));
        assert_eq!(a.mul(&b).to_scalar(), Scalar::new(-5, 8));
        assert_eq!(Q::ratio(2, 4), Q::ratio(1, 2));
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn overflow_is_flagged() {
        take_overflow();
        let mut x = Q::from_i64(i64::MAX);
        for _ in 0..4 {
            x = x.mul(&x);
        }
        assert!(take_overflow());
        assert!(!take_overflow());
    }
}
