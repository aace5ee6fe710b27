//! Integer degree vectors, rational coefficient vectors, the two involutions
//! and finite windows of the grading lattice.

use std::fmt;
use std::str::FromStr;

use num::traits::Zero;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DegreeVector(pub SmallVec<[i64; 6]>);

impl Clone for DegreeVector {
    fn clone(&self) -> Self {
        DegreeVector(SmallVec::from_slice(&self.0))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalVector(pub SmallVec<[Scalar; 6]>);

impl DegreeVector {
    pub fn new(coords: &[i64]) -> DegreeVector {
        DegreeVector(SmallVec::from_slice(coords))
    }

    /// Builds `(f(0), .., f(n-1))` without going through an iterator.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> i64) -> DegreeVector {
        if n <= 6 {
            let mut buf = [0i64; 6];
            for (i, b) in buf.iter_mut().enumerate().take(n) {
                *b = f(i);
            }
            DegreeVector(SmallVec::from_slice(&buf[..n]))
        } else {
            DegreeVector((0..n).map(f).collect())
        }
    }

    pub fn zero(n: usize) -> DegreeVector {
        DegreeVector(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> DegreeVector {
        let mut v = DegreeVector::zero(n);
        v.0[i] = 1;
        v
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &DegreeVector) -> DegreeVector {
        let mut out = self.clone();
        out.0.truncate(other.0.len());
        out.0.iter_mut().zip(other.0.iter()).for_each(|(a, b)| *a += b);
        out
    }

    pub fn sub(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector::from_fn(self.0.len().min(other.0.len()), |i| self.0[i] - other.0[i])
    }

    pub fn neg(&self) -> DegreeVector {
        DegreeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> DegreeVector {
        DegreeVector(self.0.iter().map(|a| k * a).collect())
    }

    pub fn dot(&self, other: &DegreeVector) -> i64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|&c| Scalar::from_int(c)).collect())
    }
}

impl RationalVector {
    pub fn new(coords: Vec<Scalar>) -> RationalVector {
        RationalVector(SmallVec::from_vec(coords))
    }

    pub fn zero(n: usize) -> RationalVector {
        RationalVector(SmallVec::from_elem(Scalar::zero(), n))
    }

    pub fn unit(n: usize, i: usize) -> RationalVector {
        let mut v = RationalVector::zero(n);
        v.0[i] = Scalar::from_int(1);
        v
    }

    pub fn from_ints(coords: &[i64]) -> RationalVector {
        RationalVector(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Scalar) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }

    /// `self += k * other`
    pub fn axpy(&mut self, k: &Scalar, other: &RationalVector) {
        if k.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    /// `self += k * r` for an integer vector `r`
    pub fn axpy_int(&mut self, k: &Scalar, r: &DegreeVector) {
        if k.is_zero() {
            return;
        }
        for (a, &b) in self.0.iter_mut().zip(r.0.iter()) {
            if b != 0 {
                *a += k * &Scalar::from_int(b);
            }
        }
    }

    pub fn dot(&self, other: &RationalVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn dot_int(&self, r: &DegreeVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, &b) in self.0.iter().zip(r.0.iter()) {
            if b != 0 && !a.is_zero() {
                acc += a * &Scalar::from_int(b);
            }
        }
        acc
    }
}

/// The `bar` involution on even arity `2m`.
pub fn bar(r: &DegreeVector) -> Result<DegreeVector> {
    let n = r.arity();
    if n == 0 || n % 2 != 0 {
        return Err(Error::Arity(format!("bar needs even arity, got {n}")));
    }
    Ok(bar_unchecked(r))
}

pub(crate) fn bar_unchecked(r: &DegreeVector) -> DegreeVector {
    let m = r.arity() / 2;
    DegreeVector::from_fn(2 * m, |i| if i < m { r.0[m + i] } else { -r.0[i - m] })
}

/// The rational extension of `bar`, used on coefficient vectors.
pub fn bar_rational(u: &RationalVector) -> Result<RationalVector> {
    let n = u.arity();
    if n == 0 || n % 2 != 0 {
        return Err(Error::Arity(format!("bar needs even arity, got {n}")));
    }
    let m = n / 2;
    let mut out = SmallVec::with_capacity(n);
    out.extend(u.0[m..].iter().cloned());
    out.extend(u.0[..m].iter().map(|c| -c));
    Ok(RationalVector(out))
}

/// The `underline` map on odd arity `M = 2m+1`.
pub fn underline(r: &DegreeVector) -> Result<DegreeVector> {
    let n = r.arity();
    if n % 2 != 1 || n < 3 {
        return Err(Error::Arity(format!("underline needs odd arity at least 3, got {n}")));
    }
    Ok(underline_unchecked(r))
}

pub(crate) fn underline_unchecked(r: &DegreeVector) -> DegreeVector {
    let big_m = r.arity();
    let m = (big_m - 1) / 2;
    let last = r.0[big_m - 1];
    let mut out: SmallVec<[i64; 6]> = SmallVec::with_capacity(big_m);
    out.extend(r.0[m..2 * m].iter().map(|c| c + last));
    out.extend(r.0[..m].iter().map(|c| -c + last));
    out.push(-r.0[..2 * m].iter().sum::<i64>());
    DegreeVector(out)
}

/// Membership in the subgroup on which `underline` vanishes.
pub fn in_g(r: &DegreeVector) -> Result<bool> {
    let n = r.arity();
    if n % 2 != 1 || n < 3 {
        return Err(Error::Arity(format!("the subgroup G needs odd arity at least 3, got {n}")));
    }
    Ok(in_g_unchecked(r))
}

pub(crate) fn in_g_unchecked(r: &DegreeVector) -> bool {
    let big_m = r.arity();
    let m = (big_m - 1) / 2;
    let last = r.0[big_m - 1];
    r.0[..m].iter().all(|&c| c == last) && r.0[m..2 * m].iter().all(|&c| c == -last)
}

pub fn pair(u: &RationalVector, v: &RationalVector) -> Result<Scalar> {
    if u.arity() != v.arity() {
        return Err(Error::ArityMismatch(u.arity(), v.arity()));
    }
    Ok(u.dot(v))
}

pub fn pair_int(r: &DegreeVector, s: &DegreeVector) -> Result<i64> {
    if r.arity() != s.arity() {
        return Err(Error::ArityMismatch(r.arity(), s.arity()));
    }
    Ok(r.dot(s))
}

/// A cube `{ r : max |r_i| <= R }` in `Z^N`, iterated lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub radius: i64,
    pub arity: usize,
}

impl Window {
    pub fn new(radius: i64, arity: usize) -> Window {
        assert!(radius >= 0, "negative window radius");
        Window { radius, arity }
    }

    pub fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.side().pow(self.arity as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, r: &DegreeVector) -> bool {
        r.arity() == self.arity && r.max_abs() <= self.radius
    }

    /// Position of `r` in the lexicographic enumeration.
    pub fn index_of(&self, r: &DegreeVector) -> Option<usize> {
        if !self.contains(r) {
            return None;
        }
        let side = self.side();
        let mut idx = 0usize;
        for &c in r.coords() {
            idx = idx * side + (c + self.radius) as usize;
        }
        Some(idx)
    }

    pub fn at(&self, mut idx: usize) -> DegreeVector {
        let side = self.side();
        let mut coords: SmallVec<[i64; 6]> = SmallVec::from_elem(0, self.arity);
        for k in (0..self.arity).rev() {
            coords[k] = (idx % side) as i64 - self.radius;
            idx /= side;
        }
        DegreeVector(coords)
    }

    pub fn iter(&self) -> impl Iterator<Item = DegreeVector> + '_ {
        (0..self.len()).map(move |i| self.at(i))
    }

    pub fn points(&self) -> Vec<DegreeVector> {
        self.iter().collect()
    }
}

fn fmt_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(f, &self.0)
    }
}

impl fmt::Debug for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(f, &self.0)
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn split_parens(s: &str) -> Result<Vec<&str>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a parenthesised list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(|p| p.trim()).collect())
}

impl FromStr for DegreeVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<DegreeVector> {
        let parts = split_parens(s)?;
        let coords = parts
            .iter()
            .map(|p| p.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {p:?} in {s:?}"))))
            .collect::<Result<SmallVec<[i64; 6]>>>()?;
        Ok(DegreeVector(coords))
    }
}

impl FromStr for RationalVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<RationalVector> {
        let parts = split_parens(s)?;
        let coords = parts
            .iter()
            .map(|p| p.parse::<Scalar>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<SmallVec<[Scalar; 6]>>>()?;
        Ok(RationalVector(coords))
    }
}

impl serde::Serialize for DegreeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for DegreeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<DegreeVector, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `DegreeVector::new`, for brevity in tests and examples.
pub fn dv(coords: &[i64]) -> DegreeVector {
    DegreeVector::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_values() {
        assert_eq!(bar(&dv(&[1, 2])).unwrap(), dv(&[2, -1]));
        assert_eq!(bar(&dv(&[0, 0, 0, 0])).unwrap(), dv(&[0, 0, 0, 0]));
        assert_eq!(bar(&dv(&[1, 2, 3, 4])).unwrap(), dv(&[3, 4, -1, -2]));
        assert!(bar(&dv(&[1, 2, 3])).is_err());
    }

    #[test]
    fn underline_values() {
        assert_eq!(underline(&dv(&[1, 0, 0])).unwrap(), dv(&[0, -1, -1]));
        assert_eq!(underline(&dv(&[1, -1, 1])).unwrap(), dv(&[0, 0, 0]));
        assert_eq!(underline(&dv(&[0, 0, 0])).unwrap(), dv(&[0, 0, 0]));
        assert!(underline(&dv(&[1, 0])).is_err());
    }

    #[test]
    fn pair_values() {
        let a = RationalVector::from_ints(&[1, 0]);
        let b = RationalVector::from_ints(&[0, 1]);
        assert!(pair(&a, &b).unwrap().is_zero());
        let r = dv(&[1, 2, 3, 4]);
        assert_eq!(pair_int(&r, &bar(&r).unwrap()).unwrap(), 0);
        let r = dv(&[1, 0, 0]);
        assert_eq!(pair_int(&r, &underline(&r).unwrap()).unwrap(), 0);
        assert!(pair_int(&dv(&[1]), &dv(&[1, 2])).is_err());
    }

    #[test]
    fn g_membership() {
        assert!(in_g(&dv(&[1, -1, 1])).unwrap());
        assert!(!in_g(&dv(&[1, 0, 0])).unwrap());
        assert!(in_g(&dv(&[0, 0, 0])).unwrap());
        assert!(in_g(&dv(&[1, 2])).is_err());
    }

    #[test]
    fn window_order_and_index() {
        let w = Window::new(1, 2);
        let pts = w.points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], dv(&[-1, -1]));
        assert_eq!(pts[1], dv(&[-1, 0]));
        assert_eq!(pts[8], dv(&[1, 1]));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(w.index_of(p), Some(i));
        }
        assert_eq!(w.index_of(&dv(&[2, 0])), None);
    }

    #[test]
    fn text_round_trip() {
        let r = dv(&[1, -2, 0, 3]);
        assert_eq!(r.to_string(), "(1,-2,0,3)");
        assert_eq!("(1,-2,0,3)".parse::<DegreeVector>().unwrap(), r);
        let u: RationalVector = "(1/2,-3)".parse().unwrap();
        assert_eq!(u.to_string(), "(1/2,-3)");
    }
}
