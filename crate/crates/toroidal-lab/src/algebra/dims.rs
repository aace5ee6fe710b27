//! Dimensions of graded components, computed as exact ranks of the spans of
//! their defining generators and relations.

use std::fmt;
use std::str::FromStr;

use super::{AlgebraSpec, Family};
use crate::degree::{bar, underline, DegreeVector};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank_of_rows, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    Z,
    ZModK,
    ZModKM,
    HN,
    /// `H_N ⊕ D`
    HNTilde,
    DM,
    /// `D_M ⊕ D`
    DMTilde,
    /// the whole degree-`r` component of the algebra
    Full,
}

impl FromStr for SpaceTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<SpaceTag> {
        let t = match s.trim() {
            "Z" => SpaceTag::Z,
            "Z/K" => SpaceTag::ZModK,
            "Z/K_M" => SpaceTag::ZModKM,
            "H_N" => SpaceTag::HN,
            "H_N~" => SpaceTag::HNTilde,
            "D_M" => SpaceTag::DM,
            "D_M~" => SpaceTag::DMTilde,
            "full" => SpaceTag::Full,
            other => return Err(Error::Parse(format!("unknown space tag '{other}'"))),
        };
        Ok(t)
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceTag::Z => "Z",
            SpaceTag::ZModK => "Z/K",
            SpaceTag::ZModKM => "Z/K_M",
            SpaceTag::HN => "H_N",
            SpaceTag::HNTilde => "H_N~",
            SpaceTag::DM => "D_M",
            SpaceTag::DMTilde => "D_M~",
            SpaceTag::Full => "full",
        };
        f.write_str(s)
    }
}

fn row(v: &DegreeVector) -> Vec<Scalar> {
    v.coords().iter().map(|&c| Scalar::from_int(c)).collect()
}

/// `dim Q^N / span(relations)`
fn quotient_dim(n: usize, relations: &[Vec<Scalar>]) -> usize {
    n - rank_of_rows(relations)
}

/// Relations `Σ r_i t^r K_i = 0` at `r`.
fn z_relations(r: &DegreeVector) -> Vec<Vec<Scalar>> {
    if r.is_zero() {
        Vec::new()
    } else {
        vec![row(r)]
    }
}

/// Relations of `Z/K'` where `K'_r = {K(u,r) : (u,w) = 0}` for `r != 0`.
fn orthogonal_relations(r: &DegreeVector, w: &DegreeVector) -> Vec<Vec<Scalar>> {
    let mut rel = z_relations(r);
    if !r.is_zero() {
        rel.extend(nullspace(&Matrix::from_rows(vec![row(w)])));
    }
    rel
}

fn parity(spec: &AlgebraSpec, tag: SpaceTag, even: bool) -> Result<()> {
    if (spec.n % 2 == 0) != even {
        return Err(Error::Precondition(format!("space {tag} does not exist for N={}", spec.n)));
    }
    Ok(())
}

fn mismatch(spec: &AlgebraSpec, tag: SpaceTag) -> Error {
    Error::Precondition(format!("space {tag} is not part of {}", spec.label()))
}

pub fn component_dimension(spec: &AlgebraSpec, tag: SpaceTag, r: &DegreeVector) -> Result<usize> {
    let n = spec.n;
    if r.arity() != n {
        return Err(Error::ArityMismatch(r.arity(), n));
    }
    use Family::*;
    let dim = match tag {
        SpaceTag::Z => {
            if !spec.has_z() {
                return Err(mismatch(spec, tag));
            }
            quotient_dim(n, &z_relations(r))
        }
        SpaceTag::ZModK => {
            parity(spec, tag, true)?;
            quotient_dim(n, &orthogonal_relations(r, &bar(r)?))
        }
        SpaceTag::ZModKM => {
            parity(spec, tag, false)?;
            quotient_dim(n, &orthogonal_relations(r, &underline(r)?))
        }
        SpaceTag::HN => {
            parity(spec, tag, true)?;
            rank_of_rows(&[row(&bar(r)?)])
        }
        SpaceTag::HNTilde => {
            parity(spec, tag, true)?;
            if r.is_zero() {
                n
            } else {
                rank_of_rows(&[row(&bar(r)?)])
            }
        }
        SpaceTag::DM => {
            parity(spec, tag, false)?;
            rank_of_rows(&[row(&underline(r)?)])
        }
        SpaceTag::DMTilde => {
            parity(spec, tag, false)?;
            if r.is_zero() {
                n
            } else {
                rank_of_rows(&[row(&underline(r)?)])
            }
        }
        SpaceTag::Full => {
            let g = spec.g_dim();
            let central = match spec.family {
                Toroidal | FullToroidal | TauS => component_dimension(spec, SpaceTag::Z, r)?,
                TauH => component_dimension(spec, SpaceTag::ZModK, r)?,
                TauD => component_dimension(spec, SpaceTag::ZModKM, r)?,
                MinimalEALA => {
                    if r.is_zero() {
                        n
                    } else {
                        0
                    }
                }
                HN | SN | DM | DerA => 0,
            };
            let derivations = match spec.family {
                Toroidal | MinimalEALA => {
                    if r.is_zero() {
                        n
                    } else {
                        0
                    }
                }
                FullToroidal | DerA => n,
                TauS | SN => n - rank_of_rows(&z_relations(r)),
                TauH => component_dimension(spec, SpaceTag::HNTilde, r)?,
                HN => component_dimension(spec, SpaceTag::HN, r)?,
                TauD => component_dimension(spec, SpaceTag::DMTilde, r)?,
                DM => component_dimension(spec, SpaceTag::DM, r)?,
            };
            g + central + derivations
        }
    };
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{dv, Window};
    use crate::simple_lie::build_sl;

    #[test]
    fn examples() {
        let g = build_sl(2).unwrap();
        let h = AlgebraSpec::new(Family::TauH, 4, Some(g.clone())).unwrap();
        assert_eq!(component_dimension(&h, SpaceTag::ZModK, &dv(&[1, 1, 0, 0])).unwrap(), 1);
        assert_eq!(component_dimension(&h, SpaceTag::ZModK, &dv(&[0, 0, 0, 0])).unwrap(), 4);
        let d = AlgebraSpec::new(Family::TauD, 3, Some(g)).unwrap();
        assert_eq!(component_dimension(&d, SpaceTag::ZModKM, &dv(&[2, -2, 2])).unwrap(), 0);
        assert!(component_dimension(&d, SpaceTag::ZModK, &dv(&[0, 0, 0])).is_err());
        let hn = AlgebraSpec::new(Family::HN, 2, None).unwrap();
        assert!(component_dimension(&hn, SpaceTag::Z, &dv(&[0, 0])).is_err());
    }

    #[test]
    fn full_dimension_matches_local_basis() {
        let g = build_sl(2).unwrap();
        for (fam, n) in [
            (Family::Toroidal, 2),
            (Family::FullToroidal, 2),
            (Family::TauS, 3),
            (Family::TauH, 4),
            (Family::TauD, 3),
            (Family::MinimalEALA, 2),
        ] {
            let spec = AlgebraSpec::new(fam, n, Some(g.clone())).unwrap();
            for r in Window::new(1, n).iter() {
                let b = spec.local_basis(&r).unwrap();
                assert_eq!(component_dimension(&spec, SpaceTag::Full, &r).unwrap(), b.len(), "{fam} {r}");
            }
        }
        for (fam, n) in [(Family::HN, 2), (Family::SN, 3), (Family::DM, 3), (Family::DerA, 2)] {
            let spec = AlgebraSpec::new(fam, n, None).unwrap();
            for r in Window::new(1, n).iter() {
                let b = spec.local_basis(&r).unwrap();
                assert_eq!(component_dimension(&spec, SpaceTag::Full, &r).unwrap(), b.len(), "{fam} {r}");
            }
        }
    }
}
