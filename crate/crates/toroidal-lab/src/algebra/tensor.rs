//! Local structure tensors: the bracket of every generator pair at degrees
//! `(r, s)`, in local coordinates at `r+s`.

use std::cell::RefCell;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::coeff::Coeff;
use super::element::AlgebraElement;
use super::{AlgebraSpec, GenKind, LocalBasis, Slot};
use crate::degree::DegreeVector;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Entry<T> = SmallVec<[(u16, T); 4]>;

/// `entries[i * ns + j]` is `[gen_i(r), gen_j(s)]` as sparse coordinates at
/// `r+s`.
#[derive(Clone, Debug)]
pub struct PairTable<T> {
    pub nr: usize,
    pub ns: usize,
    pub nq: usize,
    pub entries: Vec<Entry<T>>,
}

impl<T: Coeff> PairTable<T> {
    pub fn get(&self, i: usize, j: usize) -> &Entry<T> {
        &self.entries[i * self.ns + j]
    }
}

/// Adds `coef * u` (a raw central vector) to the coordinates of `target`.
pub(crate) fn add_k<T: Coeff>(target: &LocalBasis, acc: &mut [T], u: &[i64], coef: i64) {
    if coef == 0 {
        return;
    }
    let off = target.k_offset();
    let q = target.degree.coords();
    match &target.k {
        Slot::Zero => {}
        Slot::Full => {
            for (i, &ui) in u.iter().enumerate() {
                if ui != 0 {
                    acc[off + i] = acc[off + i].add(&T::from_i64(coef * ui));
                }
            }
        }
        Slot::Local { p } => {
            let qp = q[*p];
            let up = u[*p];
            let mut j = 0;
            for i in 0..u.len() {
                if i == *p {
                    continue;
                }
                let num = u[i] * qp - q[i] * up;
                if num != 0 {
                    acc[off + j] = acc[off + j].add(&T::ratio(coef * num, qp));
                }
                j += 1;
            }
        }
        Slot::Line { w, ww } => {
            let dot: i64 = u.iter().zip(w.coords()).map(|(a, b)| a * b).sum();
            if dot != 0 {
                acc[off] = acc[off].add(&T::ratio(coef * dot, *ww));
            }
        }
    }
}

/// Adds `coef * u` (a raw derivation vector) to the coordinates of `target`.
/// With `check`, a vector outside the family's derivation space is an error.
pub(crate) fn add_d<T: Coeff>(target: &LocalBasis, acc: &mut [T], u: &[i64], coef: i64, check: bool) -> Result<()> {
    if coef == 0 || u.iter().all(|&c| c == 0) {
        return Ok(());
    }
    let off = target.d_offset();
    let q = target.degree.coords();
    let bad = || {
        Error::Inadmissible(format!(
            "derivation D({}|{}) is outside the family",
            DegreeVector::new(u),
            target.degree
        ))
    };
    match &target.d {
        Slot::Zero => {
            if check {
                return Err(bad());
            }
        }
        Slot::Full => {
            for (i, &ui) in u.iter().enumerate() {
                if ui != 0 {
                    acc[off + i] = acc[off + i].add(&T::from_i64(coef * ui));
                }
            }
        }
        Slot::Local { p } => {
            if check && u.iter().zip(q).map(|(a, b)| a * b).sum::<i64>() != 0 {
                return Err(bad());
            }
            let qp = q[*p];
            let mut j = 0;
            for (i, &ui) in u.iter().enumerate() {
                if i == *p {
                    continue;
                }
                if ui != 0 {
                    acc[off + j] = acc[off + j].add(&T::ratio(coef * ui, qp));
                }
                j += 1;
            }
        }
        Slot::Line { w, ww } => {
            let dot: i64 = u.iter().zip(w.coords()).map(|(a, b)| a * b).sum();
            if check && u.iter().zip(w.coords()).any(|(&a, &b)| a * ww != dot * b) {
                return Err(bad());
            }
            acc[off] = acc[off].add(&T::ratio(coef * dot, *ww));
        }
    }
    Ok(())
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The bracket of two generators, accumulated into `acc` (coordinates at
/// `r+s`). These are the full toroidal rules:
/// `[X(r),Y(s)] = [X,Y](r+s) + <X,Y>K(r,r+s)`,
/// `[D(u,r),X(s)] = (u,s)X(r+s)`,
/// `[D(u,r),K(v,s)] = (u,s)K(v,r+s) + (u,v)K(r,r+s)`,
/// `[D(u,r),D(v,s)] = D((u,s)v-(v,r)u, r+s) + (u,s)(v,r)K(r,r+s)`,
/// with `Z` central in `g⊗A ⊕ Z`.
#[allow(clippy::too_many_arguments)]
fn generator_bracket<T: Coeff>(
    spec: &AlgebraSpec,
    br: &LocalBasis,
    i: usize,
    bs: &LocalBasis,
    j: usize,
    bq: &LocalBasis,
    acc: &mut [T],
    check: bool,
) -> Result<()> {
    let r = br.degree.coords();
    let s = bs.degree.coords();
    let gi = &br.gens[i];
    let gj = &bs.gens[j];
    let z = spec.has_z();
    match (&gi.kind, &gj.kind) {
        (GenKind::X(a), GenKind::X(b)) => {
            let g = spec.g.as_ref().expect("g present");
            for &(c, f) in g.bracket_basis(*a, *b) {
                acc[c] = acc[c].add(&T::from_i64(f));
            }
            let kappa = g.form_basis(*a, *b);
            if z && kappa != 0 {
                add_k(bq, acc, r, kappa);
            }
        }
        (GenKind::D, GenKind::X(b)) => {
            let c = dot(gi.vec.coords(), s);
            if c != 0 {
                acc[*b] = acc[*b].add(&T::from_i64(c));
            }
        }
        (GenKind::X(a), GenKind::D) => {
            let c = dot(gj.vec.coords(), r);
            if c != 0 {
                acc[*a] = acc[*a].add(&T::from_i64(-c));
            }
        }
        (GenKind::D, GenKind::K) => {
            if z {
                let u = gi.vec.coords();
                let v = gj.vec.coords();
                let us = dot(u, s);
                let uv = dot(u, v);
                let raw = DegreeVector::from_fn(v.len(), |i| us * v[i] + uv * r[i]);
                add_k(bq, acc, raw.coords(), 1);
            }
        }
        (GenKind::K, GenKind::D) => {
            if z {
                let u = gi.vec.coords();
                let v = gj.vec.coords();
                let vr = dot(v, r);
                let vu = dot(v, u);
                let raw = DegreeVector::from_fn(u.len(), |i| vr * u[i] + vu * s[i]);
                add_k(bq, acc, raw.coords(), -1);
            }
        }
        (GenKind::D, GenKind::D) => {
            let u = gi.vec.coords();
            let v = gj.vec.coords();
            let us = dot(u, s);
            let vr = dot(v, r);
            let raw = DegreeVector::from_fn(v.len(), |i| us * v[i] - vr * u[i]);
            add_d(bq, acc, raw.coords(), 1, check)?;
            if z {
                add_k(bq, acc, r, us * vr);
            }
        }
        _ => {}
    }
    Ok(())
}

/// Structure tensor for the degree pair `(r, s)`. `bq` must be the local
/// basis at `r+s`.
pub fn pair_table_with<T: Coeff>(
    spec: &AlgebraSpec,
    br: &LocalBasis,
    bs: &LocalBasis,
    bq: &LocalBasis,
    check: bool,
) -> Result<PairTable<T>> {
    let (nr, ns, nq) = (br.len(), bs.len(), bq.len());
    let mut entries = Vec::with_capacity(nr * ns);
    let mut acc: Vec<T> = vec![T::zero(); nq];
    for i in 0..nr {
        for j in 0..ns {
            for a in acc.iter_mut() {
                *a = T::zero();
            }
            generator_bracket(spec, br, i, bs, j, bq, &mut acc, check)?;
            let mut e: Entry<T> = SmallVec::new();
            for (l, a) in acc.iter().enumerate() {
                if !a.is_zero() {
                    e.push((l as u16, a.clone()));
                }
            }
            entries.push(e);
        }
    }
    Ok(PairTable { nr, ns, nq, entries })
}

/// Exact structure tensor, checking that every result lies in the family.
pub fn pair_table(spec: &AlgebraSpec, r: &DegreeVector, s: &DegreeVector) -> Result<PairTable<Scalar>> {
    let br = spec.local_basis(r)?;
    let bs = spec.local_basis(s)?;
    let bq = spec.local_basis(&r.add(s))?;
    pair_table_with(spec, &br, &bs, &bq, true)
}

/// The Lie bracket of two elements of the same algebra. Only generator
/// pairs with nonzero coefficients are expanded.
pub fn bracket(spec: &AlgebraSpec, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    Bracketer::new(spec).bracket(a, b)
}

/// Brackets many elements of one algebra, keeping every local basis it has
/// built.
pub struct Bracketer<'a> {
    spec: &'a AlgebraSpec,
    packed: RefCell<FxHashMap<u128, Rc<LocalBasis>>>,
    bases: RefCell<FxHashMap<DegreeVector, Rc<LocalBasis>>>,
}

/// Packs a degree with at most six coordinates of size below `2^20` into one
/// integer key.
fn pack(q: &DegreeVector) -> Option<u128> {
    let c = q.coords();
    if c.len() > 6 {
        return None;
    }
    let mut key = c.len() as u128;
    for &x in c {
        if x.unsigned_abs() >= 1 << 20 {
            return None;
        }
        key = (key << 21) | (x + (1 << 20)) as u128;
    }
    Some(key)
}

impl<'a> Bracketer<'a> {
    pub fn new(spec: &'a AlgebraSpec) -> Bracketer<'a> {
        Bracketer { spec, packed: RefCell::new(FxHashMap::default()), bases: RefCell::new(FxHashMap::default()) }
    }

    pub fn basis(&self, q: &DegreeVector) -> Result<Rc<LocalBasis>> {
        let key = pack(q);
        let hit = match key {
            Some(k) => self.packed.borrow().get(&k).cloned(),
            None => self.bases.borrow().get(q).cloned(),
        };
        if let Some(b) = hit {
            return Ok(b);
        }
        let b = Rc::new(self.spec.local_basis(q)?);
        match key {
            Some(k) => self.packed.borrow_mut().insert(k, b.clone()),
            None => self.bases.borrow_mut().insert(q.clone(), b.clone()),
        };
        Ok(b)
    }

    pub fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (r, ca) in a.components() {
            let br = self.basis(r)?;
            for (s, cb) in b.components() {
                let bs = self.basis(s)?;
                let q = r.add(s);
                let bq = self.basis(&q)?;
                let acc = component_bracket(self.spec, &br, ca, &bs, cb, &bq)?;
                out.add_owned(q, acc);
            }
        }
        Ok(out)
    }
}
fn component_bracket(
    spec: &AlgebraSpec,
    br: &LocalBasis,
    ca: &[Scalar],
    bs: &LocalBasis,
    cb: &[Scalar],
    bq: &LocalBasis,
) -> Result<Vec<Scalar>> {
    let mut acc: Vec<Scalar> = (0..bq.len()).map(|_| Scalar::from_int(0)).collect();
    let nonzero = |c: &[Scalar]| c.iter().filter(|x| !num::Zero::is_zero(*x)).count();
    if nonzero(ca) == 1 && nonzero(cb) == 1 {
        let (i, x) = ca.iter().enumerate().find(|(_, x)| !num::Zero::is_zero(*x)).expect("one nonzero");
        let (j, y) = cb.iter().enumerate().find(|(_, y)| !num::Zero::is_zero(*y)).expect("one nonzero");
        generator_bracket(spec, br, i, bs, j, bq, &mut acc, true)?;
        let xy = x * y;
        if !num::One::is_one(&xy) {
            acc.iter_mut().for_each(|c| *c *= &xy);
        }
        return Ok(acc);
    }
    let mut tmp = acc.clone();
    for (i, x) in ca.iter().enumerate() {
        if num::Zero::is_zero(x) {
            continue;
        }
        for (j, y) in cb.iter().enumerate() {
            if num::Zero::is_zero(y) {
                continue;
            }
            tmp.iter_mut().for_each(|t| *t = Scalar::from_int(0));
            generator_bracket(spec, br, i, bs, j, bq, &mut tmp, true)?;
            let xy = x * y;
            for (l, c) in tmp.iter().enumerate() {
                if !num::Zero::is_zero(c) {
                    acc[l] += &xy * c;
                }
            }
        }
    }
    Ok(acc)
}
