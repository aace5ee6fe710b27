//! `sp_{2m}` on `Q^{2m}` preserving `J = [[0, I], [-I, 0]]`, and the fibers
//! used by jet modules.

use std::fmt;
use std::str::FromStr;

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{in_span, Matrix};
use crate::scalar::Scalar;

/// Basis of `sp_{2m}` in the order `E_ij - E_{m+j,m+i}`, then
/// `E_{i,m+j} + E_{j,m+i}` (`i <= j`, just `E_{i,m+i}` on the diagonal),
/// then `E_{m+i,j} + E_{m+j,i}` likewise. There are `m(2m+1)` elements.
pub fn sp_basis(m: usize) -> Result<Vec<Matrix>> {
    if m < 1 {
        return Err(Error::Precondition("sp_{2m} needs m >= 1".into()));
    }
    let n = 2 * m;
    let mut out = Vec::with_capacity(m * (2 * m + 1));
    for i in 0..m {
        for j in 0..m {
            out.push(&Matrix::unit(n, i, j) - &Matrix::unit(n, m + j, m + i));
        }
    }
    for i in 0..m {
        for j in i..m {
            if i == j {
                out.push(Matrix::unit(n, i, m + i));
            } else {
                out.push(&Matrix::unit(n, i, m + j) + &Matrix::unit(n, j, m + i));
            }
        }
    }
    for i in 0..m {
        for j in i..m {
            if i == j {
                out.push(Matrix::unit(n, m + i, i));
            } else {
                out.push(&Matrix::unit(n, m + i, j) + &Matrix::unit(n, m + j, i));
            }
        }
    }
    Ok(out)
}

/// `X^T J + J X = 0`
pub fn is_symplectic(x: &Matrix) -> bool {
    let n = x.rows();
    if n % 2 != 0 || x.cols() != n {
        return false;
    }
    let m = n / 2;
    let mut j = Matrix::zeros(n, n);
    for i in 0..m {
        j.set(i, m + i, Scalar::from_int(1));
        j.set(m + i, i, Scalar::from_int(-1));
    }
    (&(&x.transpose() * &j) + &(&j * x)).is_zero()
}

/// Every bracket of basis elements lies in the span of the basis.
pub fn basis_is_closed(basis: &[Matrix]) -> bool {
    let rows: Vec<Vec<Scalar>> = basis.iter().map(|b| b.flatten()).collect();
    basis.iter().all(|a| basis.iter().all(|b| in_span(&rows, &a.commutator(b).flatten())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fiber {
    Trivial,
    Defining,
    /// `Sym^2` of the defining module, the adjoint module
    SymSquare,
}

impl FromStr for Fiber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Fiber> {
        match s.trim().to_ascii_lowercase().as_str() {
            "trivial" | "1" => Ok(Fiber::Trivial),
            "defining" | "natural" => Ok(Fiber::Defining),
            "sym2" | "adjoint" | "3" => Ok(Fiber::SymSquare),
            other => Err(Error::Parse(format!("unknown fiber '{other}'"))),
        }
    }
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fiber::Trivial => "trivial",
            Fiber::Defining => "defining",
            Fiber::SymSquare => "sym2",
        })
    }
}

/// A finite-dimensional `sp_{2m}`-module with one matrix per basis element.
#[derive(Clone, Debug)]
pub struct SpRep {
    pub m: usize,
    pub fiber: Fiber,
    pub dim: usize,
    pub basis_actions: Vec<Matrix>,
}

fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

impl SpRep {
    pub fn new(m: usize, fiber: Fiber) -> Result<SpRep> {
        let basis = sp_basis(m)?;
        let dim = match fiber {
            Fiber::Trivial => 1,
            Fiber::Defining => 2 * m,
            Fiber::SymSquare => m * (2 * m + 1),
        };
        let mut rep = SpRep { m, fiber, dim, basis_actions: Vec::new() };
        rep.basis_actions = basis.iter().map(|b| rep.act(b)).collect();
        Ok(rep)
    }

    /// The action of a `2m x 2m` matrix of `sp_{2m}`.
    pub fn act(&self, x: &Matrix) -> Matrix {
        match self.fiber {
            Fiber::Trivial => Matrix::zeros(1, 1),
            Fiber::Defining => x.clone(),
            Fiber::SymSquare => {
                let n = 2 * self.m;
                let pairs = sym_pairs(n);
                let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).expect("pair");
                let mut out = Matrix::zeros(pairs.len(), pairs.len());
                for (col, &(i, j)) in pairs.iter().enumerate() {
                    for k in 0..n {
                        let a = x.get(k, i);
                        if !a.is_zero() {
                            out.add_at(idx(k, j), col, a);
                        }
                        let b = x.get(k, j);
                        if !b.is_zero() {
                            out.add_at(idx(i, k), col, b);
                        }
                    }
                }
                out
            }
        }
    }

    /// `[ρ(a), ρ(b)] = ρ([a, b])` on the basis.
    pub fn check_bracket(&self) -> bool {
        let basis = sp_basis(self.m).expect("m >= 1");
        basis.iter().zip(&self.basis_actions).all(|(a, ra)| {
            basis.iter().zip(&self.basis_actions).all(|(b, rb)| ra.commutator(rb) == self.act(&a.commutator(b)))
        })
    }

    pub fn label(&self) -> String {
        format!("sp_{}:{}", 2 * self.m, self.fiber)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_closure() {
        let b1 = sp_basis(1).unwrap();
        assert_eq!(b1.len(), 3);
        assert_eq!(b1[0], &Matrix::unit(2, 0, 0) - &Matrix::unit(2, 1, 1));
        assert_eq!(b1[1], Matrix::unit(2, 0, 1));
        assert_eq!(b1[2], Matrix::unit(2, 1, 0));
        let b2 = sp_basis(2).unwrap();
        assert_eq!(b2.len(), 10);
        assert!(b2.iter().all(is_symplectic));
        assert!(basis_is_closed(&b1) && basis_is_closed(&b2));
        assert!(sp_basis(0).is_err());
    }

    #[test]
    fn fibers_are_modules() {
        for m in 1..=2 {
            for f in [Fiber::Trivial, Fiber::Defining, Fiber::SymSquare] {
                let r = SpRep::new(m, f).unwrap();
                assert!(r.check_bracket(), "{}", r.label());
            }
        }
        assert_eq!(SpRep::new(1, Fiber::SymSquare).unwrap().dim, 3);
    }
}
