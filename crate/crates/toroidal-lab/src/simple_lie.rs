//! The simple Lie algebra `sl_n` realised on traceless matrices, with the trace
//! form, its root data and a family of irreducible finite-dimensional modules.
//!
//! Basis order: the Cartan elements `H_k = E[k,k]-E[k+1,k+1]` for
//! `k = 1..n-1`, followed by the matrix units `E[i,j]` (`i != j`) in
//! lexicographic order.

use std::collections::BTreeMap;

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Cartan(usize),
    Root(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// basis index of the root vector `E[i,j]`
    pub vector: usize,
    /// zero based matrix position
    pub i: usize,
    pub j: usize,
    /// coefficients against the simple roots
    pub coords: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }
}

#[derive(Clone, Debug)]
pub struct SimpleLieDatum {
    pub n: usize,
    pub rank: usize,
    pub dim: usize,
    pub basis: Vec<Matrix>,
    pub kinds: Vec<BasisKind>,
    pub roots: Vec<Root>,
    /// `structure[a * dim + b]` lists `(k, c)` with `[x_a, x_b] = sum c x_k`
    structure: Vec<Vec<(usize, i64)>>,
    /// trace form Gram matrix
    gram: Vec<i64>,
}

pub fn build_sl(n: usize) -> Result<SimpleLieDatum> {
    if n < 2 {
        return Err(Error::Precondition(format!("sl_n needs n >= 2, got {n}")));
    }
    let rank = n - 1;
    let mut basis = Vec::new();
    let mut kinds = Vec::new();
    for k in 0..rank {
        let mut h = Matrix::unit(n, k, k);
        h.set(k + 1, k + 1, Scalar::from_int(-1));
        basis.push(h);
        kinds.push(BasisKind::Cartan(k));
    }
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let idx = basis.len();
            basis.push(Matrix::unit(n, i, j));
            let mut coords = vec![0i64; rank];
            let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            for c in coords.iter_mut().take(hi).skip(lo) {
                *c = sign;
            }
            kinds.push(BasisKind::Root(roots.len()));
            roots.push(Root { vector: idx, i, j, coords });
        }
    }
    let dim = basis.len();
    let mut datum = SimpleLieDatum { n, rank, dim, basis, kinds, roots, structure: Vec::new(), gram: Vec::new() };
    let mut structure = Vec::with_capacity(dim * dim);
    let mut gram = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let c = datum.basis[a].commutator(&datum.basis[b]);
            let coords = datum.coords_of(&c)?;
            structure.push(
                coords
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (k, v.to_i64().expect("integral structure constants")))
                    .collect(),
            );
            let t = (&datum.basis[a] * &datum.basis[b]).trace();
            gram.push(t.to_i64().expect("integral trace form"));
        }
    }
    datum.structure = structure;
    datum.gram = gram;
    Ok(datum)
}

impl SimpleLieDatum {
    /// Coordinates of a traceless matrix against the basis.
    pub fn coords_of(&self, m: &Matrix) -> Result<Vec<Scalar>> {
        let n = self.n;
        if m.rows() != n || m.cols() != n {
            return Err(Error::ArityMismatch(m.rows(), n));
        }
        if !m.trace().is_zero() {
            return Err(Error::Inadmissible("matrix is not traceless".into()));
        }
        let mut out = vec![Scalar::zero(); self.dim];
        let mut acc = Scalar::zero();
        for k in 0..self.rank {
            acc += m.get(k, k);
            out[k] = acc.clone();
        }
        for r in &self.roots {
            out[r.vector] = m.get(r.i, r.j).clone();
        }
        Ok(out)
    }

    pub fn matrix_of(&self, coords: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (a, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.basis[a].scale(c);
            }
        }
        m
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.structure[a * self.dim + b]
    }

    pub fn form_basis(&self, a: usize, b: usize) -> i64 {
        self.gram[a * self.dim + b]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let p = xa * yb;
                for &(k, c) in self.bracket_basis(a, b) {
                    out[k] += &p * &Scalar::from_int(c);
                }
            }
        }
        out
    }

    pub fn form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                let g = self.form_basis(a, b);
                if g != 0 && !yb.is_zero() {
                    acc += &(xa * yb) * &Scalar::from_int(g);
                }
            }
        }
        acc
    }

    pub fn is_cartan(&self, idx: usize) -> bool {
        matches!(self.kinds[idx], BasisKind::Cartan(_))
    }

    pub fn root_of(&self, idx: usize) -> Option<&Root> {
        match self.kinds[idx] {
            BasisKind::Root(r) => Some(&self.roots[r]),
            BasisKind::Cartan(_) => None,
        }
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == coords)
    }

    pub fn simple_root(&self, k: usize) -> &Root {
        self.roots.iter().find(|r| r.i == k && r.j == k + 1).expect("simple root exists")
    }

    pub fn highest_root(&self) -> &Root {
        self.roots.iter().find(|r| r.i == 0 && r.j == self.n - 1).expect("highest root exists")
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.form_basis(i, j)).collect())
            .collect()
    }

    /// `alpha(H_k)` for the root with simple-root coordinates `coords`.
    pub fn root_on_cartan(&self, coords: &[i64], k: usize) -> i64 {
        let cm = self.cartan_matrix();
        (0..self.rank).map(|i| coords[i] * cm[i][k]).sum()
    }

    /// `(alpha, beta)` under the form transported from the trace form.
    pub fn root_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let cm = self.cartan_matrix();
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += a[i] * cm[i][j] * b[j];
            }
        }
        acc
    }

    /// The co-root `h_alpha = E[i,i] - E[j,j]` of a root, in basis coordinates.
    pub fn coroot_coords(&self, root: &Root) -> Vec<Scalar> {
        let mut m = Matrix::unit(self.n, root.i, root.i);
        m.set(root.j, root.j, Scalar::from_int(-1));
        self.coords_of(&m).expect("coroot is traceless")
    }

    pub fn basis_name(&self, idx: usize) -> String {
        match self.kinds[idx] {
            BasisKind::Cartan(k) => format!("E[{},{}]-E[{},{}]", k + 1, k + 1, k + 2, k + 2),
            BasisKind::Root(r) => {
                let root = &self.roots[r];
                format!("E[{},{}]", root.i + 1, root.j + 1)
            }
        }
    }

    /// Index of `E[i,j]` (one based), if it is a basis element.
    pub fn basis_index(&self, i: usize, j: usize) -> Option<usize> {
        self.roots.iter().find(|r| r.i + 1 == i && r.j + 1 == j).map(|r| r.vector)
    }

    /// Exhaustive antisymmetry, Jacobi and invariance audit of the tables.
    pub fn audit(&self) -> bool {
        let d = self.dim;
        let unit = |a: usize| {
            let mut v = vec![Scalar::zero(); d];
            v[a] = Scalar::from_int(1);
            v
        };
        for a in 0..d {
            for b in 0..d {
                let ab = self.bracket(&unit(a), &unit(b));
                let ba = self.bracket(&unit(b), &unit(a));
                if ab.iter().zip(&ba).any(|(x, y)| !(x + y).is_zero()) {
                    return false;
                }
                if self.form_basis(a, b) != self.form_basis(b, a) {
                    return false;
                }
                for c in 0..d {
                    let j1 = self.bracket(&unit(a), &self.bracket(&unit(b), &unit(c)));
                    let j2 = self.bracket(&unit(b), &self.bracket(&unit(c), &unit(a)));
                    let j3 = self.bracket(&unit(c), &self.bracket(&unit(a), &unit(b)));
                    if (0..d).any(|k| !(&(&j1[k] + &j2[k]) + &j3[k]).is_zero()) {
                        return false;
                    }
                    let lhs = self.form(&ab, &unit(c));
                    let rhs = self.form(&unit(a), &self.bracket(&unit(b), &unit(c)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        crate::linalg::rank(&Matrix::from_rows(
            (0..d).map(|a| (0..d).map(|b| Scalar::from_int(self.form_basis(a, b))).collect()).collect(),
        )) == d
    }
}

/// A finite-dimensional module: one action matrix per basis element of `g`.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    pub dim: usize,
    pub highest_weight: Vec<i64>,
    /// Dynkin labels of each basis vector
    pub weights: Vec<Vec<i64>>,
    pub action: Vec<Matrix>,
    /// index of a highest weight vector in the basis
    pub highest_vector: usize,
    pub label: String,
}

impl FiniteModule {
    pub fn act(&self, coords: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (a, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.action[a].scale(c);
            }
        }
        m
    }

    /// Exact check that `[x,y]` acts as the commutator of the actions.
    pub fn check_bracket(&self, g: &SimpleLieDatum) -> bool {
        for a in 0..g.dim {
            for b in 0..g.dim {
                let lhs = self.action[a].commutator(&self.action[b]);
                let mut rhs = Matrix::zeros(self.dim, self.dim);
                for &(k, c) in g.bracket_basis(a, b) {
                    rhs = &rhs + &self.action[k].scale(&Scalar::from_int(c));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

fn weight_from_eps(eps: &[i64]) -> Vec<i64> {
    (0..eps.len() - 1).map(|k| eps[k] - eps[k + 1]).collect()
}

/// Symmetric power `Sym^k` of the defining module (or its dual).
fn symmetric_power(g: &SimpleLieDatum, k: usize, dual: bool) -> FiniteModule {
    let n = g.n;
    let mut monomials: Vec<Vec<usize>> = Vec::new();
    fn rec(n: usize, left: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if start == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(n, left - a, start + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), &mut monomials);
    let index: BTreeMap<Vec<usize>, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = monomials.len();
    let mut action = Vec::with_capacity(g.dim);
    for x in &g.basis {
        let x = if dual { -&x.transpose() } else { x.clone() };
        // x acts as the derivation sum_{i,j} x_ij x_i d/dx_j
        let mut m = Matrix::zeros(dim, dim);
        for (col, mono) in monomials.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let c = x.get(i, j);
                    if c.is_zero() || mono[j] == 0 {
                        continue;
                    }
                    let mut target = mono.clone();
                    target[j] -= 1;
                    target[i] += 1;
                    let row = index[&target];
                    m.add_at(row, col, &(c * &Scalar::from_int(mono[j] as i64)));
                }
            }
        }
        action.push(m);
    }
    let weights: Vec<Vec<i64>> = monomials
        .iter()
        .map(|mono| {
            let eps: Vec<i64> = mono.iter().map(|&a| if dual { -(a as i64) } else { a as i64 }).collect();
            weight_from_eps(&eps)
        })
        .collect();
    let highest_vector = if dual { dim - 1 } else { 0 };
    let mut hw = vec![0i64; g.rank];
    if k > 0 {
        if dual {
            hw[g.rank - 1] = k as i64;
        } else {
            hw[0] = k as i64;
        }
    }
    let label = if k == 0 {
        "trivial".to_string()
    } else if dual {
        format!("Sym^{k}(dual)")
    } else {
        format!("Sym^{k}")
    };
    FiniteModule { dim, highest_weight: hw, weights, action, highest_vector, label }
}

/// Exterior power `Λ^k` of the defining module, `1 <= k <= n-1`.
fn exterior_power(g: &SimpleLieDatum, k: usize) -> FiniteModule {
    let n = g.n;
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), &mut subsets);
    let index: BTreeMap<Vec<usize>, usize> = subsets.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = subsets.len();
    let mut action = Vec::with_capacity(g.dim);
    for x in &g.basis {
        let mut m = Matrix::zeros(dim, dim);
        for (col, set) in subsets.iter().enumerate() {
            // x(e_S) = sum over positions p: e_{s_1} ^ .. ^ x e_{s_p} ^ ..
            for (p, &j) in set.iter().enumerate() {
                for i in 0..n {
                    let c = x.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let mut seq = set.clone();
                    seq[p] = i;
                    let mut sorted = seq.clone();
                    sorted.sort_unstable();
                    if sorted.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    let mut inversions = 0;
                    for a in 0..seq.len() {
                        for b in a + 1..seq.len() {
                            if seq[a] > seq[b] {
                                inversions += 1;
                            }
                        }
                    }
                    let sign = if inversions % 2 == 0 { 1 } else { -1 };
                    m.add_at(index[&sorted], col, &(c * &Scalar::from_int(sign)));
                }
            }
        }
        action.push(m);
    }
    let weights = subsets
        .iter()
        .map(|set| {
            let mut eps = vec![0i64; n];
            for &i in set {
                eps[i] = 1;
            }
            weight_from_eps(&eps)
        })
        .collect();
    let mut hw = vec![0i64; g.rank];
    hw[k - 1] = 1;
    FiniteModule { dim, highest_weight: hw, weights, action, highest_vector: 0, label: format!("Λ^{k}") }
}

/// The irreducible module with the given highest weight (Dynkin labels).
pub fn irrep(g: &SimpleLieDatum, highest: &[i64]) -> Result<FiniteModule> {
    if highest.len() != g.rank {
        return Err(Error::ArityMismatch(highest.len(), g.rank));
    }
    if highest.iter().any(|&c| c < 0) {
        return Err(Error::Precondition(format!("highest weight {highest:?} is not dominant")));
    }
    let nonzero: Vec<usize> = (0..g.rank).filter(|&i| highest[i] != 0).collect();
    match nonzero.as_slice() {
        [] => Ok(symmetric_power(g, 0, false)),
        [0] => Ok(symmetric_power(g, highest[0] as usize, false)),
        [i] if *i == g.rank - 1 => Ok(symmetric_power(g, highest[*i] as usize, true)),
        [i] if highest[*i] == 1 => Ok(exterior_power(g, i + 1)),
        _ => Err(Error::Capability(format!(
            "irreducible module with highest weight {highest:?} for sl_{} is outside the supported families",
            g.n
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn sl2_and_sl3_shapes() {
        let g = build_sl(2).unwrap();
        assert_eq!((g.rank, g.roots.len(), g.dim), (1, 2, 3));
        assert_eq!(g.form_basis(0, 0), 2);
        let g3 = build_sl(3).unwrap();
        assert_eq!((g3.rank, g3.roots.len(), g3.dim), (2, 6, 8));
        assert!(build_sl(1).is_err());
    }

    #[test]
    fn tables_pass_audit() {
        assert!(build_sl(2).unwrap().audit());
        assert!(build_sl(3).unwrap().audit());
    }

    #[test]
    fn names_and_indices() {
        let g = build_sl(2).unwrap();
        assert_eq!(g.basis_name(0), "E[1,1]-E[2,2]");
        let e = g.basis_index(1, 2).unwrap();
        assert_eq!(g.basis_name(e), "E[1,2]");
        assert_eq!(g.highest_root().vector, e);
        let f = g.basis_index(2, 1).unwrap();
        assert_eq!(g.form_basis(e, f), 1);
    }

    #[test]
    fn sl2_irreps() {
        let g = build_sl(2).unwrap();
        let v1 = irrep(&g, &[1]).unwrap();
        assert_eq!(v1.dim, 2);
        let v2 = irrep(&g, &[2]).unwrap();
        assert_eq!(v2.dim, 3);
        let mut ws: Vec<i64> = v2.weights.iter().map(|w| w[0]).collect();
        ws.sort();
        assert_eq!(ws, vec![-2, 0, 2]);
        let v0 = irrep(&g, &[0]).unwrap();
        assert_eq!(v0.dim, 1);
        assert!(v0.action.iter().all(|m| m.is_zero()));
        for m in 0..6 {
            let v = irrep(&g, &[m]).unwrap();
            assert_eq!(v.dim as i64, m + 1);
            assert!(v.check_bracket(&g));
        }
    }

    #[test]
    fn sl3_irreps_and_capability() {
        let g = build_sl(3).unwrap();
        for hw in [[1, 0], [0, 1], [2, 0], [0, 2], [0, 0]] {
            let v = irrep(&g, &hw).unwrap();
            assert!(v.check_bracket(&g), "{hw:?}");
        }
        assert_eq!(irrep(&g, &[2, 0]).unwrap().dim, 6);
        assert!(matches!(irrep(&g, &[1, 1]), Err(Error::Capability(_))));
        let g4 = build_sl(4).unwrap();
        let l2 = irrep(&g4, &[0, 1, 0]).unwrap();
        assert_eq!(l2.dim, 6);
        assert!(l2.check_bracket(&g4));
    }

    #[test]
    fn highest_vector_is_killed_by_positive_roots() {
        let g = build_sl(3).unwrap();
        for hw in [[1, 0], [0, 1], [2, 0]] {
            let v = irrep(&g, &hw).unwrap();
            for r in g.roots.iter().filter(|r| r.is_positive()) {
                let col = v.action[r.vector].column(v.highest_vector);
                assert!(col.iter().all(|x| x.is_zero()));
            }
            assert_eq!(v.weights[v.highest_vector], hw.to_vec());
        }
    }

    #[test]
    fn e_nilpotent_on_modules() {
        let g = build_sl(2).unwrap();
        let e = g.basis_index(1, 2).unwrap();
        for m in 0..5 {
            let v = irrep(&g, &[m]).unwrap();
            let mut p = Matrix::identity(v.dim);
            for _ in 0..v.dim {
                p = &p * &v.action[e];
            }
            assert!(p.is_zero());
        }
        let _ = int(0);
    }
}
