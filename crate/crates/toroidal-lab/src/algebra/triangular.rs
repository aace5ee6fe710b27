//! Triangular decompositions of the Hamiltonian family and their closure
//! relations.

use std::fmt;
use std::str::FromStr;

use num::traits::Zero;

use super::element::AlgebraElement;
use super::sweep::{render_coords, render_generator, BasisCache};
use super::tensor::pair_table_with;
use super::{AlgebraSpec, Family, GenKind, LocalBasis};
use crate::degree::{DegreeVector, Window};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decomposition {
    /// five parts for `N = 2`, split by `s_1` against `s_2`
    N2,
    /// five parts for `N = 2m`, split by `r_m` against `r_{2m}`
    GeneralN,
    /// three parts split by the sign of the root only
    LevelZero,
}

impl FromStr for Decomposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Decomposition> {
        match s.trim().to_ascii_lowercase().as_str() {
            "n2" | "n2-healal" => Ok(Decomposition::N2),
            "generaln" | "general" => Ok(Decomposition::GeneralN),
            "levelzero" | "level-zero" => Ok(Decomposition::LevelZero),
            other => Err(Error::Parse(format!("unknown decomposition '{other}'"))),
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decomposition::N2 => "n2",
            Decomposition::GeneralN => "generalN",
            Decomposition::LevelZero => "levelzero",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    PlusPlus,
    Plus,
    Zero,
    Minus,
    MinusMinus,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::PlusPlus => "++",
            Part::Plus => "+",
            Part::Zero => "0",
            Part::Minus => "-",
            Part::MinusMinus => "--",
        })
    }
}

fn check_ambient(spec: &AlgebraSpec, dec: Decomposition) -> Result<()> {
    if spec.family != Family::TauH {
        return Err(Error::Precondition(format!("decomposition {dec} lives on tauH, not {}", spec.label())));
    }
    if dec == Decomposition::N2 && spec.n != 2 {
        return Err(Error::Precondition(format!("decomposition n2 needs N=2, got {}", spec.n)));
    }
    Ok(())
}

/// `x_alpha` sign for a g-basis index: `Some(true)` positive root, `Some(false)`
/// negative root, `None` Cartan.
fn root_sign(spec: &AlgebraSpec, a: usize) -> Option<bool> {
    spec.g.as_ref().and_then(|g| g.root_of(a)).map(|r| r.is_positive())
}

fn classify(spec: &AlgebraSpec, dec: Decomposition, q: &DegreeVector, root: Option<Option<bool>>) -> Part {
    let by_root = |sign: Option<bool>| match sign {
        Some(true) => Part::Plus,
        Some(false) => Part::Minus,
        None => Part::Zero,
    };
    if dec == Decomposition::LevelZero {
        return match root {
            Some(sign) => by_root(sign),
            None => Part::Zero,
        };
    }
    let m = spec.n / 2;
    let (a, b) = (q.coords()[m - 1], q.coords()[2 * m - 1]);
    if a > b {
        Part::PlusPlus
    } else if a < b {
        Part::MinusMinus
    } else if a > 0 {
        Part::Plus
    } else if a < 0 {
        Part::Minus
    } else {
        match root {
            Some(sign) => by_root(sign),
            None => Part::Zero,
        }
    }
}

pub(crate) fn generator_part(spec: &AlgebraSpec, dec: Decomposition, basis: &LocalBasis, i: usize) -> Part {
    let root = match basis.gens[i].kind {
        GenKind::X(a) => Some(root_sign(spec, a)),
        GenKind::K | GenKind::D => None,
    };
    classify(spec, dec, &basis.degree, root)
}

/// The part of a canonical symbol.
pub fn triangular_part(spec: &AlgebraSpec, dec: Decomposition, sym: &super::BasisSymbol) -> Result<Part> {
    check_ambient(spec, dec)?;
    let e = AlgebraElement::symbol(spec, sym, &Scalar::from_int(1))?;
    if e.is_zero() {
        return Err(Error::Precondition(format!("{sym} is zero in {}", spec.label())));
    }
    let root = match sym {
        super::BasisSymbol::G(a, _) => Some(root_sign(spec, *a)),
        _ => None,
    };
    Ok(classify(spec, dec, sym.degree(), root))
}

/// `[A, B] ⊆ T` for every listed `(A, B, T)`.
fn rules(dec: Decomposition) -> Vec<(Vec<Part>, Vec<Part>, Part, &'static str)> {
    use Part::*;
    match dec {
        Decomposition::N2 | Decomposition::GeneralN => {
            let mut v = vec![
                (vec![PlusPlus], vec![Minus, Plus], PlusPlus, "[++, - + +] in ++"),
                (vec![MinusMinus], vec![Minus, Plus], MinusMinus, "[--, - + +] in --"),
            ];
            for p in [PlusPlus, Plus, Zero, Minus, MinusMinus] {
                v.push((vec![p], vec![p], p, "parts are subalgebras"));
            }
            for p in [PlusPlus, Plus, Minus, MinusMinus] {
                v.push((vec![Zero], vec![p], p, "parts are stable under part 0"));
            }
            v
        }
        Decomposition::LevelZero => vec![
            (vec![Zero], vec![Zero], Zero, "part 0 is a subalgebra"),
            (vec![Zero], vec![Plus], Plus, "[0, +] in +"),
            (vec![Zero], vec![Minus], Minus, "[0, -] in -"),
            (vec![Plus], vec![Plus], Plus, "[+, +] in +"),
            (vec![Minus], vec![Minus], Minus, "[-, -] in -"),
        ],
    }
}

pub fn verify_closure(spec: &AlgebraSpec, dec: Decomposition, window: &Window) -> VerificationReport {
    let mut rep = VerificationReport::new(&format!("closure:{dec}"), spec.family.name(), spec.n, Some(window.radius));
    if let Err(e) = check_ambient(spec, dec) {
        rep.fail(vec![dec.to_string()], e.to_string());
        return rep;
    }
    let rules = rules(dec);
    let mut cache = BasisCache::new(spec);
    let pts = window.points();
    for (a, r) in pts.iter().enumerate() {
        let br = cache.get(r);
        let parts_r: Vec<Part> = (0..br.len()).map(|i| generator_part(spec, dec, &br, i)).collect();
        for s in &pts[a..] {
            let bs = cache.get(s);
            let q = r.add(s);
            let bq = cache.get(&q);
            let parts_s: Vec<Part> = (0..bs.len()).map(|j| generator_part(spec, dec, &bs, j)).collect();
            let parts_q: Vec<Part> = (0..bq.len()).map(|l| generator_part(spec, dec, &bq, l)).collect();
            let table = match pair_table_with::<Scalar>(spec, &br, &bs, &bq, true) {
                Ok(t) => t,
                Err(e) => {
                    rep.fail(vec![r.to_string(), s.to_string()], e.to_string());
                    continue;
                }
            };
            rep.count("degree_pairs", 1);
            for i in 0..br.len() {
                for j in 0..bs.len() {
                    let entry = table.get(i, j);
                    if entry.is_empty() {
                        continue;
                    }
                    for (lhs, rhs, target, name) in &rules {
                        let applies = (lhs.contains(&parts_r[i]) && rhs.contains(&parts_s[j]))
                            || (lhs.contains(&parts_s[j]) && rhs.contains(&parts_r[i]));
                        if !applies {
                            continue;
                        }
                        rep.count("rule_checks", 1);
                        let stray: Vec<Scalar> = (0..bq.len())
                            .map(|l| {
                                let c = entry.iter().find(|(m, _)| *m as usize == l).map(|(_, c)| c.clone());
                                match c {
                                    Some(c) if parts_q[l] != *target => c,
                                    _ => Scalar::zero(),
                                }
                            })
                            .collect();
                        if stray.iter().any(|c| !c.is_zero()) {
                            rep.fail(
                                vec![
                                    format!("{} in {}", render_generator(spec, &br, i), parts_r[i]),
                                    format!("{} in {}", render_generator(spec, &bs, j), parts_s[j]),
                                    (*name).to_string(),
                                ],
                                render_coords(spec, &q, &stray),
                            );
                        }
                    }
                }
            }
        }
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisSymbol;
    use crate::degree::dv;
    use crate::simple_lie::build_sl;

    fn tau_h(n: usize) -> AlgebraSpec {
        AlgebraSpec::new(Family::TauH, n, Some(build_sl(2).unwrap())).unwrap()
    }

    #[test]
    fn examples() {
        let s2 = tau_h(2);
        let e = s2.g.as_ref().unwrap().basis_index(1, 2).unwrap();
        let p = triangular_part(&s2, Decomposition::N2, &BasisSymbol::G(e, dv(&[2, 1]))).unwrap();
        assert_eq!(p, Part::PlusPlus);
        let s4 = tau_h(4);
        let h = BasisSymbol::h(&dv(&[1, 0, 1, 0])).unwrap();
        assert_eq!(triangular_part(&s4, Decomposition::GeneralN, &h).unwrap(), Part::Zero);
        let x = BasisSymbol::G(e, dv(&[3, -1, 0, 2]));
        assert_eq!(triangular_part(&s4, Decomposition::LevelZero, &x).unwrap(), Part::Plus);
        assert!(triangular_part(&s4, Decomposition::N2, &x).is_err());
    }

    #[test]
    fn closure_small_windows() {
        assert!(verify_closure(&tau_h(2), Decomposition::N2, &Window::new(2, 2)).passed());
        assert!(verify_closure(&tau_h(4), Decomposition::GeneralN, &Window::new(1, 4)).passed());
        assert!(verify_closure(&tau_h(2), Decomposition::LevelZero, &Window::new(1, 2)).passed());
    }
}
