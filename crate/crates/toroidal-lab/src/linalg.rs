//! Exact linear algebra over the rationals: dense matrices, row reduction,
//! rank and kernels, plus an incremental sparse eliminator for large
//! overdetermined systems.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    /// The matrix unit `E_{ij}` (zero based).
    pub fn unit(n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        if !v.is_zero() {
            let k = i * self.cols + j;
            self.data[k] += v;
        }
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Block diagonal embedding `self ⊗ I_k` in the Kronecker sense.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Flatten into a single row vector (row major).
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in difference");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, row * a.cols + j);
            }
        }
        let inv = a.get(row, col).recip();
        for j in col..a.cols {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        for i in 0..a.rows {
            if i == row {
                continue;
            }
            let f = a.get(i, col).clone();
            if f.is_zero() {
                continue;
            }
            for j in col..a.cols {
                let pv = a.get(row, j).clone();
                if !pv.is_zero() {
                    let v = a.get(i, j) - &(&f * &pv);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

pub fn rank_of_rows(rows: &[Vec<Scalar>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(rows.to_vec()))
}

/// A basis of `{ x : m x = 0 }`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            v
        })
        .collect()
}

/// A basis of the orthogonal complement of the span of `vectors` under the
/// standard dot product.
pub fn orthogonal_complement(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return (0..dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = Scalar::one();
                v
            })
            .collect();
    }
    nullspace(&Matrix::from_rows(vectors.to_vec()))
}

/// Does `v` lie in the row span of `rows`?
pub fn in_span(rows: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let base = rank_of_rows(rows);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank_of_rows(&ext) == base
}

/// Solve `m x = b` exactly, returning one solution when it exists.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, m.cols).clone();
    }
    Some(x)
}

pub type SparseRow = Vec<(usize, Scalar)>;

/// Incremental Gaussian elimination with sparse rows. Rows are kept in echelon
/// form keyed by pivot column, each normalised to a unit pivot.
#[derive(Clone, Debug, Default)]
pub struct SparseEliminator {
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy_sparse(target: &SparseRow, k: &Scalar, src: &SparseRow) -> SparseRow {
    // target - k*src, both sorted by column
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        if j == src.len() || (i < target.len() && target[i].0 < src[j].0) {
            out.push(target[i].clone());
            i += 1;
        } else if i == target.len() || src[j].0 < target[i].0 {
            out.push((src[j].0, -(k * &src[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - &(k * &src[j].1);
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEliminator {
    pub fn new() -> SparseEliminator {
        SparseEliminator::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the stored rows, returning the remainder.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut cur: SparseRow = row.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
        cur.sort_by_key(|(c, _)| *c);
        let mut pos = 0;
        while pos < cur.len() {
            let (col, coeff) = cur[pos].clone();
            if let Some(piv) = self.rows.get(&col) {
                cur = axpy_sparse(&cur, &coeff, piv);
            } else {
                pos += 1;
                continue;
            }
            pos = cur.iter().position(|(c, _)| *c >= col).unwrap_or(cur.len());
        }
        cur
    }

    /// Insert a row; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        let rem = self.reduce(row);
        if rem.is_empty() {
            return false;
        }
        let inv = rem[0].1.recip();
        let normalised: SparseRow = rem.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.rows.insert(normalised[0].0, normalised);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Kernel basis of the accumulated system over `ncols` unknowns.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Scalar>> {
        // back substitution to reduced form
        let pivots: Vec<usize> = self.pivots();
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for &p in pivots.iter().rev() {
            let mut row = self.rows[&p].clone();
            let mut pos = 1;
            while pos < row.len() {
                let (col, coeff) = row[pos].clone();
                if let Some(piv) = reduced.get(&col) {
                    row = axpy_sparse(&row, &coeff, piv);
                    pos = row.iter().position(|(c, _)| *c >= col).unwrap_or(row.len());
                } else {
                    pos += 1;
                }
            }
            reduced.insert(p, row);
        }
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
        let mut free_pos = vec![usize::MAX; ncols];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut basis: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); ncols];
                v[f] = Scalar::one();
                v
            })
            .collect();
        for (&p, row) in &reduced {
            for (c, val) in row.iter().skip(1) {
                let k = free_pos[*c];
                debug_assert!(k != usize::MAX);
                basis[k][p] = -val;
            }
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let k = nullspace(&m);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn product_and_commutator() {
        let e = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let f = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let h = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
        assert_eq!(e.commutator(&f), h);
        assert_eq!(h.commutator(&e), e.scale(&int(2)));
    }

    #[test]
    fn solve_and_span() {
        let m = Matrix::from_ints(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve(&m, &[int(1), int(1)]).unwrap(), vec![frac(1, 2), frac(1, 3)]);
        let rows = vec![vec![int(1), int(1), int(0)]];
        assert!(in_span(&rows, &[int(2), int(2), int(0)]));
        assert!(!in_span(&rows, &[int(1), int(0), int(0)]));
        let sing = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(solve(&sing, &[int(1), int(2)]).is_none());
    }

    #[test]
    fn sparse_matches_dense() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 0], vec![1, 3, 1, 1], vec![2, 0, 0, 5]];
        let mut el = SparseEliminator::new();
        for r in &rows {
            let sr: SparseRow = r.iter().enumerate().map(|(c, &v)| (c, int(v))).collect();
            el.insert(&sr);
        }
        let dense = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect());
        assert_eq!(el.rank(), rank(&dense));
        let k = el.nullspace(4);
        assert_eq!(k.len(), 4 - rank(&dense));
        for v in &k {
            assert!(dense.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn orthogonal_complement_dimension() {
        let v = vec![vec![int(1), int(2), int(0), int(0)]];
        let c = orthogonal_complement(&v, 4);
        assert_eq!(c.len(), 3);
        for w in &c {
            let d: Scalar = w.iter().zip(&v[0]).map(|(a, b)| a * b).sum();
            assert!(d.is_zero());
        }
    }
}
