//! Basis symbols and algebra elements in normal form.
//!
//! An element stores, for each degree, its coordinates in the local basis of
//! that degree. Coordinates are the normal form: two elements are equal iff
//! their coordinate maps agree.

use std::fmt;

use num::traits::{One, Zero};
use smallvec::SmallVec;

use super::{AlgebraSpec, LocalBasis, Slot};
use crate::degree::{DegreeVector, RationalVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisSymbol {
    /// `X(r)` for the g-basis element with the given index
    G(usize, DegreeVector),
    /// `K(u, r)`
    K(RationalVector, DegreeVector),
    /// `D(u, r)`
    D(RationalVector, DegreeVector),
}

impl BasisSymbol {
    pub fn degree(&self) -> &DegreeVector {
        match self {
            BasisSymbol::G(_, r) | BasisSymbol::K(_, r) | BasisSymbol::D(_, r) => r,
        }
    }

    pub fn d_i(n: usize, i: usize) -> BasisSymbol {
        BasisSymbol::D(RationalVector::unit(n, i), DegreeVector::zero(n))
    }

    pub fn k_i(n: usize, i: usize) -> BasisSymbol {
        BasisSymbol::K(RationalVector::unit(n, i), DegreeVector::zero(n))
    }

    /// `h_r = D(bar r, r)`
    pub fn h(r: &DegreeVector) -> Result<BasisSymbol> {
        let b = crate::degree::bar(r)?;
        Ok(BasisSymbol::D(b.to_rational(), r.clone()))
    }

    /// `D(underline r, r)`
    pub fn contact(r: &DegreeVector) -> Result<BasisSymbol> {
        let u = crate::degree::underline(r)?;
        Ok(BasisSymbol::D(u.to_rational(), r.clone()))
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::G(a, r) => write!(f, "X[{a}]{r}"),
            BasisSymbol::K(u, r) => write!(f, "K({u}|{r})"),
            BasisSymbol::D(u, r) => write!(f, "D({u}|{r})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    comps: Components,
}

/// Components sorted by degree. Elements seldom have more than a few, and
/// one is stored inline.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Components(SmallVec<[(DegreeVector, Vec<Scalar>); 1]>);

impl Components {
    fn find(&self, q: &DegreeVector) -> std::result::Result<usize, usize> {
        self.0.binary_search_by(|(k, _)| k.cmp(q))
    }

    fn get(&self, q: &DegreeVector) -> Option<&Vec<Scalar>> {
        self.find(q).ok().map(|i| &self.0[i].1)
    }

    fn iter(&self) -> impl Iterator<Item = (&DegreeVector, &Vec<Scalar>)> {
        self.0.iter().map(|(q, c)| (q, c))
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Adds `coords` at `q`, dropping the component if it cancels.
    fn accumulate(&mut self, q: &DegreeVector, coords: &[Scalar]) {
        match self.find(q) {
            Ok(i) => {
                let entry = &mut self.0[i].1;
                for (e, c) in entry.iter_mut().zip(coords) {
                    *e += c;
                }
                if entry.iter().all(|c| c.is_zero()) {
                    self.0.remove(i);
                }
            }
            Err(i) => self.0.insert(i, (q.clone(), coords.to_vec())),
        }
    }
}

fn project_k(basis: &LocalBasis, u: &RationalVector, acc: &mut [Scalar], coef: &Scalar) {
    let off = basis.k_offset();
    let q = basis.degree.coords();
    match &basis.k {
        Slot::Zero => {}
        Slot::Full => {
            for (i, ui) in u.0.iter().enumerate() {
                acc[off + i] += coef * ui;
            }
        }
        Slot::Local { p } => {
            let qp = Scalar::from_int(q[*p]);
            let up = &u.0[*p];
            let mut j = 0;
            for (i, ui) in u.0.iter().enumerate() {
                if i == *p {
                    continue;
                }
                let c = ui - &(&(up * &Scalar::from_int(q[i])) / &qp);
                acc[off + j] += coef * &c;
                j += 1;
            }
        }
        Slot::Line { w, ww } => {
            acc[off] += coef * &(&u.dot_int(w) / &Scalar::from_int(*ww));
        }
    }
}

fn project_d(basis: &LocalBasis, u: &RationalVector, acc: &mut [Scalar], coef: &Scalar) -> Result<()> {
    if u.is_zero() || coef.is_zero() {
        return Ok(());
    }
    let off = basis.d_offset();
    let q = basis.degree.coords();
    let bad = || Error::Inadmissible(format!("derivation D({u}|{}) is outside the family", basis.degree));
    match &basis.d {
        Slot::Zero => return Err(bad()),
        Slot::Full => {
            for (i, ui) in u.0.iter().enumerate() {
                acc[off + i] += coef * ui;
            }
        }
        Slot::Local { p } => {
            if !u.dot_int(&basis.degree).is_zero() {
                return Err(bad());
            }
            let qp = Scalar::from_int(q[*p]);
            let mut j = 0;
            for (i, ui) in u.0.iter().enumerate() {
                if i == *p {
                    continue;
                }
                acc[off + j] += coef * &(ui / &qp);
                j += 1;
            }
        }
        Slot::Line { w, ww } => {
            let lam = &u.dot_int(w) / &Scalar::from_int(*ww);
            let wrat = w.to_rational();
            if wrat.scale(&lam) != *u {
                return Err(bad());
            }
            acc[off] += coef * &lam;
        }
    }
    Ok(())
}

/// Reconstructs the raw central vector of a coordinate block.
fn k_vector(basis: &LocalBasis, coords: &[Scalar], n: usize) -> RationalVector {
    let mut u = RationalVector::zero(n);
    for (g, c) in basis.gens[basis.k_offset()..basis.d_offset()].iter().zip(coords) {
        u.axpy_int(c, &g.vec);
    }
    u
}

fn d_vector(basis: &LocalBasis, coords: &[Scalar], n: usize) -> RationalVector {
    let mut u = RationalVector::zero(n);
    for (g, c) in basis.gens[basis.d_offset()..].iter().zip(coords) {
        u.axpy_int(c, &g.vec);
    }
    u
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&DegreeVector, &Vec<Scalar>)> {
        self.comps.iter()
    }

    pub fn component(&self, r: &DegreeVector) -> Option<&Vec<Scalar>> {
        self.comps.get(r)
    }

    pub fn degrees(&self) -> Vec<DegreeVector> {
        self.comps.iter().map(|(q, _)| q.clone()).collect()
    }

    /// Adds local coordinates at degree `q`.
    pub fn add_coords(&mut self, q: &DegreeVector, coords: &[Scalar]) {
        if coords.iter().all(|c| c.is_zero()) {
            return;
        }
        self.comps.accumulate(q, coords);
    }

    /// [`AlgebraElement::add_coords`] for an owned coordinate vector.
    pub fn add_owned(&mut self, q: DegreeVector, coords: Vec<Scalar>) {
        if coords.iter().all(|c| c.is_zero()) {
            return;
        }
        match self.comps.find(&q) {
            Ok(_) => self.comps.accumulate(&q, &coords),
            Err(i) => self.comps.0.insert(i, (q, coords)),
        }
    }

    pub fn from_coords(q: &DegreeVector, coords: &[Scalar]) -> AlgebraElement {
        let mut e = AlgebraElement::zero();
        e.add_coords(q, coords);
        e
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (q, c) in other.comps.iter() {
            out.add_coords(q, c);
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> AlgebraElement {
        if k.is_zero() {
            return AlgebraElement::zero();
        }
        let comps = self.comps.iter().map(|(q, c)| (q.clone(), c.iter().map(|x| x * k).collect())).collect();
        AlgebraElement { comps: Components(comps) }
    }

    /// `self == other.scale(k)`, without building the right side.
    pub fn eq_scaled(&self, other: &AlgebraElement, k: &Scalar) -> bool {
        if k.is_zero() {
            return self.is_zero();
        }
        self.comps.len() == other.comps.len()
            && other.comps.iter().all(|(q, c)| {
                self.comps.get(q).is_some_and(|mine| mine.len() == c.len() && mine.iter().zip(c).all(|(a, b)| *a == b * k))
            })
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    /// The element `coef * symbol`, reduced to normal form.
    pub fn symbol(spec: &AlgebraSpec, sym: &BasisSymbol, coef: &Scalar) -> Result<AlgebraElement> {
        let r = sym.degree();
        let basis = spec.local_basis(r)?;
        let mut acc = vec![Scalar::zero(); basis.len()];
        match sym {
            BasisSymbol::G(a, _) => {
                if *a >= spec.g_dim() {
                    return Err(Error::Inadmissible(format!("{sym} is not in {}", spec.label())));
                }
                acc[*a] += coef;
            }
            BasisSymbol::K(u, _) => {
                if u.arity() != spec.n {
                    return Err(Error::ArityMismatch(u.arity(), spec.n));
                }
                if !spec.has_z() && !u.is_zero() {
                    return Err(Error::Inadmissible(format!("{sym} is not in {}", spec.label())));
                }
                project_k(&basis, u, &mut acc, coef);
            }
            BasisSymbol::D(u, _) => {
                if u.arity() != spec.n {
                    return Err(Error::ArityMismatch(u.arity(), spec.n));
                }
                project_d(&basis, u, &mut acc, coef)?;
            }
        }
        Ok(AlgebraElement::from_coords(r, &acc))
    }

    pub fn from_symbols(spec: &AlgebraSpec, terms: &[(BasisSymbol, Scalar)]) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (s, c) in terms {
            out = out.add(&AlgebraElement::symbol(spec, s, c)?);
        }
        Ok(out)
    }

    pub fn x(spec: &AlgebraSpec, a: usize, r: &DegreeVector) -> Result<AlgebraElement> {
        AlgebraElement::symbol(spec, &BasisSymbol::G(a, r.clone()), &Scalar::one())
    }

    pub fn k(spec: &AlgebraSpec, u: &RationalVector, r: &DegreeVector) -> Result<AlgebraElement> {
        AlgebraElement::symbol(spec, &BasisSymbol::K(u.clone(), r.clone()), &Scalar::one())
    }

    pub fn d(spec: &AlgebraSpec, u: &RationalVector, r: &DegreeVector) -> Result<AlgebraElement> {
        AlgebraElement::symbol(spec, &BasisSymbol::D(u.clone(), r.clone()), &Scalar::one())
    }

    /// The canonical symbol expansion of the element.
    pub fn symbols(&self, spec: &AlgebraSpec) -> Vec<(BasisSymbol, Scalar)> {
        let n = spec.n;
        let mut out = Vec::new();
        for (q, coords) in self.comps.iter() {
            let basis = spec.local_basis(q).expect("degree of the right arity");
            for (a, c) in coords[..basis.g_dim].iter().enumerate() {
                if !c.is_zero() {
                    out.push((BasisSymbol::G(a, q.clone()), c.clone()));
                }
            }
            let kc = &coords[basis.k_offset()..basis.d_offset()];
            match &basis.k {
                Slot::Zero => {}
                Slot::Full => {
                    for (i, c) in kc.iter().enumerate() {
                        if !c.is_zero() {
                            out.push((BasisSymbol::K(RationalVector::unit(n, i), q.clone()), c.clone()));
                        }
                    }
                }
                Slot::Local { .. } => {
                    let u = k_vector(&basis, kc, n);
                    let qq = Scalar::from_int(q.dot(q));
                    let shift = &u.dot_int(q) / &qq;
                    let mut reduced = u.clone();
                    reduced.axpy_int(&-shift, q);
                    if !reduced.is_zero() {
                        out.push((BasisSymbol::K(reduced, q.clone()), Scalar::one()));
                    }
                }
                Slot::Line { w, .. } => {
                    if !kc[0].is_zero() {
                        out.push((BasisSymbol::K(w.to_rational(), q.clone()), kc[0].clone()));
                    }
                }
            }
            let dc = &coords[basis.d_offset()..];
            match &basis.d {
                Slot::Zero => {}
                Slot::Full => {
                    for (i, c) in dc.iter().enumerate() {
                        if !c.is_zero() {
                            out.push((BasisSymbol::D(RationalVector::unit(n, i), q.clone()), c.clone()));
                        }
                    }
                }
                Slot::Local { .. } => {
                    let u = d_vector(&basis, dc, n);
                    if !u.is_zero() {
                        out.push((BasisSymbol::D(u, q.clone()), Scalar::one()));
                    }
                }
                Slot::Line { w, .. } => {
                    if !dc[0].is_zero() {
                        out.push((BasisSymbol::D(w.to_rational(), q.clone()), dc[0].clone()));
                    }
                }
            }
        }
        out
    }

    /// Raw `(g, K, D)` parts at one degree: g coordinates, central vector and
    /// derivation vector.
    pub fn parts(&self, spec: &AlgebraSpec, q: &DegreeVector) -> (Vec<Scalar>, RationalVector, RationalVector) {
        let n = spec.n;
        let basis = spec.local_basis(q).expect("degree of the right arity");
        match self.comps.get(q) {
            None => (vec![Scalar::zero(); basis.g_dim], RationalVector::zero(n), RationalVector::zero(n)),
            Some(c) => (
                c[..basis.g_dim].to_vec(),
                k_vector(&basis, &c[basis.k_offset()..basis.d_offset()], n),
                d_vector(&basis, &c[basis.d_offset()..], n),
            ),
        }
    }

    pub fn render(&self, spec: &AlgebraSpec) -> String {
        render_terms(&self.symbols(spec))
    }
}

pub fn render_terms(terms: &[(BasisSymbol, Scalar)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|(s, c)| {
            if c.is_one() {
                s.to_string()
            } else if *c == -Scalar::one() {
                format!("-{s}")
            } else {
                format!("{c}*{s}")
            }
        })
        .collect();
    parts.join(" + ")
}

/// Reduces a formal combination of symbols to its canonical expansion.
pub fn normal_form(spec: &AlgebraSpec, terms: &[(BasisSymbol, Scalar)]) -> Result<Vec<(BasisSymbol, Scalar)>> {
    Ok(AlgebraElement::from_symbols(spec, terms)?.symbols(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bracket, Family};
    use crate::degree::dv;
    use crate::scalar::int;
    use crate::simple_lie::build_sl;

    fn rv(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn loop_bracket_example() {
        let g = build_sl(2).unwrap();
        let e = g.basis_index(1, 2).unwrap();
        let f = g.basis_index(2, 1).unwrap();
        let spec = AlgebraSpec::new(Family::Toroidal, 2, Some(g)).unwrap();
        let x = AlgebraElement::x(&spec, e, &dv(&[1, 0])).unwrap();
        let y = AlgebraElement::x(&spec, f, &dv(&[-1, 0])).unwrap();
        let expect = AlgebraElement::from_symbols(
            &spec,
            &[(BasisSymbol::G(0, dv(&[0, 0])), int(1)), (BasisSymbol::k_i(2, 0), int(1))],
        )
        .unwrap();
        assert_eq!(bracket(&spec, &x, &y).unwrap(), expect);
    }

    #[test]
    fn hamiltonian_example() {
        let spec = AlgebraSpec::new(Family::HN, 2, None).unwrap();
        let h = |r: &[i64]| AlgebraElement::symbol(&spec, &BasisSymbol::h(&dv(r)).unwrap(), &int(1)).unwrap();
        let lhs = bracket(&spec, &h(&[1, 0]), &h(&[0, 1])).unwrap();
        assert_eq!(lhs, h(&[1, 1]).neg());
        assert!(h(&[0, 0]).is_zero());
    }

    #[test]
    fn central_normal_forms() {
        let g = build_sl(2).unwrap();
        let s = AlgebraSpec::new(Family::TauS, 3, Some(g.clone())).unwrap();
        let r = dv(&[1, 2, -1]);
        assert!(AlgebraElement::k(&s, &r.to_rational(), &r).unwrap().is_zero());
        let h = AlgebraSpec::new(Family::TauH, 4, Some(g.clone())).unwrap();
        let nf = normal_form(&h, &[(BasisSymbol::K(rv(&[0, 0, 1, 0]), dv(&[1, 0, 0, 0])), int(1))]).unwrap();
        assert_eq!(nf, vec![(BasisSymbol::K(rv(&[0, 0, -1, 0]), dv(&[1, 0, 0, 0])), int(-1))]);
        let d = AlgebraSpec::new(Family::TauD, 3, Some(g)).unwrap();
        let any = normal_form(&d, &[(BasisSymbol::K(rv(&[3, 1, 4]), dv(&[1, -1, 1])), int(1))]).unwrap();
        assert!(any.is_empty());
    }

    #[test]
    fn inadmissible_derivations_are_rejected() {
        let h = AlgebraSpec::new(Family::HN, 2, None).unwrap();
        let bad = AlgebraElement::d(&h, &rv(&[1, 0]), &dv(&[1, 0]));
        assert!(matches!(bad, Err(Error::Inadmissible(_))));
        let s = AlgebraSpec::new(Family::SN, 2, None).unwrap();
        assert!(AlgebraElement::d(&s, &rv(&[1, 1]), &dv(&[1, 0])).is_err());
        assert!(AlgebraElement::d(&s, &rv(&[0, 1]), &dv(&[1, 0])).is_ok());
        let k = AlgebraElement::k(&s, &rv(&[1, 0]), &dv(&[1, 0]));
        assert!(k.is_err());
    }

    #[test]
    fn symbols_round_trip() {
        let g = build_sl(2).unwrap();
        for fam in [Family::FullToroidal, Family::TauS, Family::TauH] {
            let spec = AlgebraSpec::new(fam, 2, Some(g.clone())).unwrap();
            let r = dv(&[2, -1]);
            let basis = spec.local_basis(&r).unwrap();
            let coords: Vec<Scalar> = (0..basis.len()).map(|i| Scalar::new(i as i64 + 1, 3)).collect();
            let e = AlgebraElement::from_coords(&r, &coords);
            let back = AlgebraElement::from_symbols(&spec, &e.symbols(&spec)).unwrap();
            assert_eq!(back, e, "{fam}");
        }
    }
}
