//! Exact rational scalars.
//!
//! Values that fit comfortably in machine words are kept as `Ratio<i64>`;
//! anything larger is promoted to a `BigRational`. The representation is
//! canonical (a value that fits is never stored big), so equality and hashing
//! are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::{BigRational, Ratio};
use num::traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

const SMALL_LIMIT: i64 = 1 << 62;

#[derive(Clone)]
enum Repr {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

#[derive(Clone)]
pub struct Scalar(Repr);

fn fits(r: &Ratio<i64>) -> bool {
    let n = *r.numer();
    let d = *r.denom();
    n > -SMALL_LIMIT && n < SMALL_LIMIT && d < SMALL_LIMIT
}

impl Scalar {
    pub fn new(numer: i64, denom: i64) -> Scalar {
        assert!(denom != 0, "zero denominator");
        if numer.checked_neg().is_some() && denom.checked_neg().is_some() {
            if let Some(s) = Scalar::small(Ratio::new(numer, denom)) {
                return s;
            }
        }
        Scalar::from_big(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::small(Ratio::from_integer(n))
            .unwrap_or_else(|| Scalar::from_big(BigRational::from_integer(BigInt::from(n))))
    }

    pub fn from_big(b: BigRational) -> Scalar {
        if let (Some(n), Some(d)) = (b.numer().to_i64(), b.denom().to_i64()) {
            let r = Ratio::new_raw(n, d);
            if fits(&r) {
                return Scalar(Repr::Small(r));
            }
        }
        Scalar(Repr::Big(Box::new(b)))
    }

    fn small(r: Ratio<i64>) -> Option<Scalar> {
        if fits(&r) {
            Some(Scalar(Repr::Small(r)))
        } else {
            None
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// The value as a machine fraction, when it is one.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(r) => Some((*r.numer(), *r.denom())),
            Repr::Big(_) => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(r) if *r.denom() == 1 => Some(*r.numer()),
            _ => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => *r.denom() == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => *r.numer() < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => *r.numer() > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(r) => Scalar::small(r.recip()).expect("recip of a small value stays small"),
            Repr::Big(b) => Scalar::from_big(b.recip()),
        }
    }

    pub fn pow(&self, e: i32) -> Scalar {
        let mut acc = Scalar::one();
        let base = if e < 0 { self.recip() } else { self.clone() };
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $big:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if *a.denom() == 1 && *b.denom() == 1 {
                        if let Some(n) = a.numer().$checked(b.numer()) {
                            if n > -SMALL_LIMIT && n < SMALL_LIMIT {
                                return Scalar(Repr::Small(Ratio::new_raw(n, 1)));
                            }
                        }
                    } else if let Some(r) = a.$checked(b) {
                        if let Some(s) = Scalar::small(r) {
                            return s;
                        }
                    }
                }
                Scalar::from_big(self.to_big() $big rhs.to_big())
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(r) = a.checked_div(b) {
                if let Some(s) = Scalar::small(r) {
                    return s;
                }
            }
        }
        Scalar::from_big(self.to_big() / rhs.to_big())
    }
}
impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}
impl<'a> Div<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        (&self).div(rhs)
    }
}
impl<'a> Div<Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div(&rhs)
    }
}

macro_rules! assignop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<Scalar> for Scalar {
            fn $method(&mut self, rhs: Scalar) {
                *self = &*self $op &rhs;
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            fn $method(&mut self, rhs: &'a Scalar) {
                *self = &*self $op rhs;
            }
        }
    };
}

assignop!(AddAssign, add_assign, +);
assignop!(SubAssign, sub_assign, -);
assignop!(MulAssign, mul_assign, *);
assignop!(DivAssign, div_assign, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(r) => Scalar(Repr::Small(-r)),
            Repr::Big(b) => Scalar::from_big(-(**b).clone()),
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Zero for Scalar {
    fn zero() -> Scalar {
        Scalar(Repr::Small(Ratio::from_integer(0)))
    }
    fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => *r.numer() == 0,
            Repr::Big(b) => b.is_zero(),
        }
    }
}

impl One for Scalar {
    fn one() -> Scalar {
        Scalar(Repr::Small(Ratio::from_integer(1)))
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(r) => {
                0u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Scalar {
        Scalar::from_int(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(b: BigRational) -> Scalar {
        Scalar::from_big(b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Scalar, ParseScalarError> {
        let t = s.trim();
        let err = || ParseScalarError(s.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Scalar::from_big(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| err())?;
                Ok(Scalar::from_big(BigRational::from_integer(n)))
            }
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for `Scalar::from_int`.
pub fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Shorthand for `Scalar::new`.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        let a = frac(1, 2);
        let b = frac(1, 3);
        assert_eq!(&a + &b, frac(5, 6));
        assert_eq!(&a - &b, frac(1, 6));
        assert_eq!(&a * &b, frac(1, 6));
        assert_eq!(&a / &b, frac(3, 2));
        assert_eq!(-a.clone(), frac(-1, 2));
        assert_eq!(frac(2, 4), frac(1, 2));
    }

    #[test]
    fn promotes_and_demotes() {
        let big = int(1 << 61);
        let sq = &big * &big;
        assert!(sq.as_small().is_none());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(back.as_small().is_some());
        let sum = &sq - &sq;
        assert!(sum.is_zero());
        assert_eq!(sum, Scalar::zero());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<Scalar>().unwrap(), frac(1, 2));
        assert_eq!("-7".parse::<Scalar>().unwrap(), int(-7));
        assert_eq!(frac(-3, 4).to_string(), "-3/4");
        assert_eq!(int(5).to_string(), "5");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn ordering_mixed_sizes() {
        let huge = &int(1 << 61) * &int(1 << 61);
        assert!(huge > int(3));
        assert!(-huge.clone() < frac(-1, 2));
        assert!(frac(1, 3) < frac(1, 2));
    }

    #[test]
    fn pow_negative_exponent() {
        assert_eq!(frac(2, 3).pow(-2), frac(9, 4));
        assert_eq!(int(2).pow(0), int(1));
    }
}
