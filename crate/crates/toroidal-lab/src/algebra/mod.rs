//! The graded algebra families, their local bases and bracket tables.
//!
//! Every family is a subquotient of the full toroidal algebra
//! `g⊗A ⊕ Z ⊕ Der A`. At each degree `q` a family has a finite local basis of
//! generators with integer representatives; all brackets are computed from
//! the full toroidal rules on those representatives and projected back to
//! local coordinates, which are the normal forms.

pub mod coeff;
pub mod dims;
pub mod element;
pub mod sweep;
pub mod tensor;
pub mod triangular;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::degree::{bar_unchecked, in_g_unchecked, underline_unchecked, DegreeVector};
use crate::error::{Error, Result};
use crate::simple_lie::SimpleLieDatum;

pub use dims::{component_dimension, SpaceTag};
pub use element::{normal_form, AlgebraElement, BasisSymbol};
pub use sweep::{verify_antisymmetry, verify_jacobi, SweepOptions};
pub use tensor::{bracket, pair_table, Bracketer, PairTable};
pub use triangular::{triangular_part, verify_closure, Decomposition, Part};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `τ = g⊗A ⊕ Z ⊕ D`
    Toroidal,
    /// `τ̃ = g⊗A ⊕ Z ⊕ Der A`
    FullToroidal,
    TauS,
    TauH,
    TauD,
    MinimalEALA,
    HN,
    SN,
    DM,
    DerA,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Toroidal,
        Family::FullToroidal,
        Family::TauS,
        Family::TauH,
        Family::TauD,
        Family::MinimalEALA,
        Family::HN,
        Family::SN,
        Family::DM,
        Family::DerA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Toroidal => "tau",
            Family::FullToroidal => "tauTilde",
            Family::TauS => "tauS",
            Family::TauH => "tauH",
            Family::TauD => "tauD",
            Family::MinimalEALA => "minimal",
            Family::HN => "HN",
            Family::SN => "SN",
            Family::DM => "DM",
            Family::DerA => "DerA",
        }
    }

    /// Families containing `g⊗A` and a central part.
    pub fn has_g(self) -> bool {
        matches!(
            self,
            Family::Toroidal
                | Family::FullToroidal
                | Family::TauS
                | Family::TauH
                | Family::TauD
                | Family::MinimalEALA
        )
    }

    pub fn needs_even(self) -> bool {
        matches!(self, Family::TauH | Family::HN)
    }

    pub fn needs_odd(self) -> bool {
        matches!(self, Family::TauD | Family::DM)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        let key = s.trim().to_ascii_lowercase();
        let fam = match key.as_str() {
            "tau" | "toroidal" => Family::Toroidal,
            "tautilde" | "fulltoroidal" | "tau~" => Family::FullToroidal,
            "taus" => Family::TauS,
            "tauh" => Family::TauH,
            "taud" => Family::TauD,
            "minimal" | "minimaleala" => Family::MinimalEALA,
            "hn" => Family::HN,
            "sn" => Family::SN,
            "dm" => Family::DM,
            "dera" => Family::DerA,
            _ => return Err(Error::Parse(format!("unknown family '{s}'"))),
        };
        Ok(fam)
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub family: Family,
    pub n: usize,
    pub g: Option<Arc<SimpleLieDatum>>,
}

impl AlgebraSpec {
    pub fn new(family: Family, n: usize, g: Option<SimpleLieDatum>) -> Result<AlgebraSpec> {
        AlgebraSpec::with_shared(family, n, g.map(Arc::new))
    }

    pub fn with_shared(family: Family, n: usize, g: Option<Arc<SimpleLieDatum>>) -> Result<AlgebraSpec> {
        if n == 0 {
            return Err(Error::Precondition("N must be positive".into()));
        }
        if family.needs_even() && n % 2 != 0 {
            return Err(Error::Arity(format!("{family} needs even N, got {n}")));
        }
        if family.needs_odd() && (n % 2 != 1 || n < 3) {
            return Err(Error::Arity(format!("{family} needs odd N >= 3, got {n}")));
        }
        match (family.has_g(), &g) {
            (true, None) => Err(Error::Precondition(format!("{family} needs a simple Lie algebra"))),
            (false, Some(_)) => Err(Error::Precondition(format!("{family} is a pure derivation algebra"))),
            _ => Ok(AlgebraSpec { family, n, g }),
        }
    }

    pub fn g_dim(&self) -> usize {
        self.g.as_ref().map_or(0, |g| g.dim)
    }

    pub fn has_z(&self) -> bool {
        self.family.has_g()
    }

    pub fn label(&self) -> String {
        format!("{}(N={})", self.family, self.n)
    }

    fn k_slot(&self, q: &DegreeVector) -> Slot {
        use Family::*;
        if !self.has_z() {
            return Slot::Zero;
        }
        if q.is_zero() {
            return Slot::Full;
        }
        match self.family {
            Toroidal | FullToroidal | TauS => Slot::Local { p: last_nonzero(q) },
            TauH => Slot::line(bar_unchecked(q)),
            TauD => {
                if in_g_unchecked(q) {
                    Slot::Zero
                } else {
                    Slot::line(underline_unchecked(q))
                }
            }
            _ => Slot::Zero,
        }
    }

    fn d_slot(&self, q: &DegreeVector) -> Slot {
        use Family::*;
        let zero = q.is_zero();
        match self.family {
            Toroidal | MinimalEALA => {
                if zero {
                    Slot::Full
                } else {
                    Slot::Zero
                }
            }
            FullToroidal | DerA => Slot::Full,
            TauS | SN => {
                if zero {
                    Slot::Full
                } else {
                    Slot::Local { p: last_nonzero(q) }
                }
            }
            TauH | HN => {
                if zero {
                    if self.family == TauH {
                        Slot::Full
                    } else {
                        Slot::Zero
                    }
                } else {
                    Slot::line(bar_unchecked(q))
                }
            }
            TauD | DM => {
                if zero && self.family == TauD {
                    Slot::Full
                } else if in_g_unchecked(q) {
                    Slot::Zero
                } else {
                    Slot::line(underline_unchecked(q))
                }
            }
        }
    }

    pub fn local_basis(&self, q: &DegreeVector) -> Result<LocalBasis> {
        if q.arity() != self.n {
            return Err(Error::ArityMismatch(q.arity(), self.n));
        }
        Ok(LocalBasis::new(self, q.clone()))
    }
}

fn last_nonzero(q: &DegreeVector) -> usize {
    q.coords().iter().rposition(|&c| c != 0).expect("nonzero degree")
}

/// How the central or derivation part of a graded component is coordinatized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    /// the component is zero
    Zero,
    /// coordinates are the vector itself (degree zero)
    Full,
    /// `N-1` coordinates obtained by eliminating the last nonzero index `p`
    Local { p: usize },
    /// one coordinate along a fixed integer vector `w`
    Line { w: DegreeVector, ww: i64 },
}

impl Slot {
    fn line(w: DegreeVector) -> Slot {
        let ww = w.dot(&w);
        Slot::Line { w, ww }
    }

    fn len(&self, n: usize) -> usize {
        match self {
            Slot::Zero => 0,
            Slot::Full => n,
            Slot::Local { .. } => n - 1,
            Slot::Line { .. } => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    X(usize),
    K,
    D,
}

/// A generator of a graded component with an integer representative vector
/// (empty for `X`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GenKind,
    pub vec: DegreeVector,
}

#[derive(Clone, Debug)]
pub struct LocalBasis {
    pub degree: DegreeVector,
    pub g_dim: usize,
    pub k: Slot,
    pub d: Slot,
    pub nk: usize,
    pub nd: usize,
    pub gens: Vec<Generator>,
}

impl LocalBasis {
    fn new(spec: &AlgebraSpec, q: DegreeVector) -> LocalBasis {
        let n = spec.n;
        let g_dim = spec.g_dim();
        let k = spec.k_slot(&q);
        let d = spec.d_slot(&q);
        let nk = k.len(n);
        let nd = d.len(n);
        let mut gens = Vec::with_capacity(g_dim + nk + nd);
        for a in 0..g_dim {
            gens.push(Generator { kind: GenKind::X(a), vec: DegreeVector::zero(0) });
        }
        push_slot_vectors(&mut gens, GenKind::K, &k, &q, n);
        push_slot_vectors(&mut gens, GenKind::D, &d, &q, n);
        LocalBasis { degree: q, g_dim, k, d, nk, nd, gens }
    }

    pub fn len(&self) -> usize {
        self.g_dim + self.nk + self.nd
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn k_offset(&self) -> usize {
        self.g_dim
    }

    pub fn d_offset(&self) -> usize {
        self.g_dim + self.nk
    }
}

/// Integer representatives of the generators of a slot. In the central part
/// `Local` uses `e_i` (`i != p`); in the derivation part it uses
/// `q_p e_i - q_i e_p`, which span `{u : (u,q) = 0}`.
fn push_slot_vectors(gens: &mut Vec<Generator>, kind: GenKind, slot: &Slot, q: &DegreeVector, n: usize) {
    let derivation = kind == GenKind::D;
    let mut push = |vec: DegreeVector| gens.push(Generator { kind: kind.clone(), vec });
    match slot {
        Slot::Zero => {}
        Slot::Full => (0..n).for_each(|i| push(DegreeVector::unit(n, i))),
        Slot::Line { w, .. } => push(w.clone()),
        Slot::Local { p } => {
            for i in (0..n).filter(|i| i != p) {
                if derivation {
                    let mut v = DegreeVector::zero(n);
                    v.0[i] = q.0[*p];
                    v.0[*p] = -q.0[i];
                    push(v)
                } else {
                    push(DegreeVector::unit(n, i))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::dv;
    use crate::simple_lie::build_sl;

    #[test]
    fn parity_and_datum_constraints() {
        let g = build_sl(2).unwrap();
        assert!(AlgebraSpec::new(Family::TauH, 3, Some(g.clone())).is_err());
        assert!(AlgebraSpec::new(Family::TauD, 2, Some(g.clone())).is_err());
        assert!(AlgebraSpec::new(Family::TauD, 1, Some(g.clone())).is_err());
        assert!(AlgebraSpec::new(Family::HN, 2, Some(g.clone())).is_err());
        assert!(AlgebraSpec::new(Family::TauS, 2, None).is_err());
        assert!(AlgebraSpec::new(Family::HN, 4, None).is_ok());
    }

    #[test]
    fn local_basis_sizes() {
        let g = build_sl(2).unwrap();
        let h4 = AlgebraSpec::new(Family::TauH, 4, Some(g.clone())).unwrap();
        assert_eq!(h4.local_basis(&dv(&[1, 0, 0, 0])).unwrap().len(), 5);
        assert_eq!(h4.local_basis(&dv(&[0, 0, 0, 0])).unwrap().len(), 11);
        let d3 = AlgebraSpec::new(Family::TauD, 3, Some(g.clone())).unwrap();
        assert_eq!(d3.local_basis(&dv(&[1, -1, 1])).unwrap().len(), 3);
        assert_eq!(d3.local_basis(&dv(&[1, 0, 0])).unwrap().len(), 5);
        let s2 = AlgebraSpec::new(Family::TauS, 2, Some(g)).unwrap();
        assert_eq!(s2.local_basis(&dv(&[2, 1])).unwrap().len(), 5);
        let hn = AlgebraSpec::new(Family::HN, 2, None).unwrap();
        assert!(hn.local_basis(&dv(&[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("tauX".parse::<Family>().is_err());
    }
}
