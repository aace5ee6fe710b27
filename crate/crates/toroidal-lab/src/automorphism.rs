//! `GL(N, Z)` acting on the full toroidal algebra:
//! `X(r) -> X(Br)`, `K(u,r) -> K(Bu,Br)`, `D(u,r) -> D(Fu,Br)` with
//! `F = (B^T)^{-1}`.

use std::fmt;

use num::traits::{One, Zero};
use rand::Rng;

use crate::algebra::sweep::render_generator;
use crate::algebra::{bracket, AlgebraElement, AlgebraSpec, BasisSymbol, Family};
use crate::degree::{bar, DegreeVector, RationalVector, Window};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank_of_rows, Matrix};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// An integer matrix with determinant `±1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegralMatrix {
    n: usize,
    rows: Vec<Vec<i64>>,
}

fn det_exact(rows: &[Vec<i64>]) -> Scalar {
    let n = rows.len();
    let mut m: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &m[i][j] - &(&f * &m[c][j]);
                m[i][j] = v;
            }
        }
    }
    det
}

impl IntegralMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<IntegralMatrix> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("B must be a nonempty square matrix".into()));
        }
        let d = det_exact(&rows);
        if d != Scalar::one() && d != -Scalar::one() {
            return Err(Error::Precondition(format!("det B = {d}, not ±1")));
        }
        Ok(IntegralMatrix { n, rows })
    }

    pub fn identity(n: usize) -> IntegralMatrix {
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        IntegralMatrix { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn det(&self) -> i64 {
        det_exact(&self.rows).to_i64().expect("unimodular")
    }

    pub fn mul(&self, o: &IntegralMatrix) -> IntegralMatrix {
        let n = self.n;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.rows[i][k] * o.rows[k][j]).sum()).collect())
            .collect();
        IntegralMatrix { n, rows }
    }

    pub fn transpose(&self) -> IntegralMatrix {
        let n = self.n;
        IntegralMatrix { n, rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i]).collect()).collect() }
    }

    /// The inverse, integral because `det = ±1`.
    pub fn inverse(&self) -> IntegralMatrix {
        let n = self.n;
        let d = self.det();
        let minor = |i: usize, j: usize| -> Vec<Vec<i64>> {
            (0..n)
                .filter(|&a| a != i)
                .map(|a| (0..n).filter(|&b| b != j).map(|b| self.rows[a][b]).collect())
                .collect()
        };
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if n == 1 {
                            return d;
                        }
                        let c = det_exact(&minor(j, i)).to_i64().expect("integral minor");
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        sign * c * d
                    })
                    .collect()
            })
            .collect();
        IntegralMatrix { n, rows }
    }

    /// `F = (B^T)^{-1}`
    pub fn contragredient(&self) -> IntegralMatrix {
        self.transpose().inverse()
    }

    pub fn apply(&self, r: &DegreeVector) -> DegreeVector {
        DegreeVector::new(&self.rows.iter().map(|row| row.iter().zip(r.coords()).map(|(a, b)| a * b).sum()).collect::<Vec<i64>>())
    }

    pub fn apply_rational(&self, u: &RationalVector) -> RationalVector {
        RationalVector::new(
            self.rows
                .iter()
                .map(|row| row.iter().zip(&u.0).map(|(&a, b)| &Scalar::from_int(a) * b).sum())
                .collect(),
        )
    }
}

impl fmt::Display for IntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| format!("{r:?}")).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for IntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Identity except rows and columns `m, 2m` (one based), which carry
/// `[[a, 1], [a-1, 1]]`.
pub fn shear_matrix(a: i64, m: usize, n: usize) -> Result<IntegralMatrix> {
    if 2 * a - 1 <= 0 {
        return Err(Error::Precondition(format!("shear needs 2a-1 > 0, got a={a}")));
    }
    if m == 0 || 2 * m > n {
        return Err(Error::Precondition(format!("shear index m={m} needs 1 <= m and 2m <= N={n}")));
    }
    let mut b = IntegralMatrix::identity(n);
    let (i, j) = (m - 1, 2 * m - 1);
    b.rows[i][i] = a;
    b.rows[i][j] = 1;
    b.rows[j][i] = a - 1;
    b.rows[j][j] = 1;
    Ok(b)
}

/// A unimodular matrix from `steps` random elementary operations and sign
/// flips, with entries kept small.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> IntegralMatrix {
    let mut b = IntegralMatrix::identity(n);
    if n == 1 {
        return b;
    }
    let mut done = 0;
    while done < steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            if rng.gen_bool(0.2) {
                for v in b.rows[i].iter_mut() {
                    *v = -*v;
                }
                done += 1;
            }
            continue;
        }
        let k: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let row: Vec<i64> = b.rows[i].iter().zip(&b.rows[j]).map(|(x, y)| x + k * y).collect();
        if row.iter().all(|x| x.abs() <= 3) {
            b.rows[i] = row;
            done += 1;
        }
    }
    b
}

fn map_symbol(b: &IntegralMatrix, f: &IntegralMatrix, sym: &BasisSymbol) -> BasisSymbol {
    match sym {
        BasisSymbol::G(a, r) => BasisSymbol::G(*a, b.apply(r)),
        BasisSymbol::K(u, r) => BasisSymbol::K(b.apply_rational(u), b.apply(r)),
        BasisSymbol::D(u, r) => BasisSymbol::D(f.apply_rational(u), b.apply(r)),
    }
}

/// The image `B.a`; an error if some image symbol leaves the family.
pub fn apply_automorphism(spec: &AlgebraSpec, b: &IntegralMatrix, a: &AlgebraElement) -> Result<AlgebraElement> {
    if b.n() != spec.n {
        return Err(Error::ArityMismatch(b.n(), spec.n));
    }
    let f = b.contragredient();
    let terms: Vec<(BasisSymbol, Scalar)> = a.symbols(spec).iter().map(|(s, c)| (map_symbol(b, &f, s), c.clone())).collect();
    AlgebraElement::from_symbols(spec, &terms)
}

fn generators_at(spec: &AlgebraSpec, r: &DegreeVector) -> Vec<AlgebraElement> {
    let basis = spec.local_basis(r).expect("degree of the right arity");
    (0..basis.len())
        .map(|i| {
            let mut c = vec![Scalar::zero(); basis.len()];
            c[i] = Scalar::one();
            AlgebraElement::from_coords(r, &c)
        })
        .collect()
}

/// `B[x,y] = [Bx,By]` for all generator pairs with degrees in the window.
pub fn verify_homomorphism(spec: &AlgebraSpec, b: &IntegralMatrix, window: &Window) -> VerificationReport {
    let mut rep = VerificationReport::new("automorphism", spec.family.name(), spec.n, Some(window.radius));
    rep.note(format!("B = {b}"));
    if b.n() != spec.n {
        rep.fail(vec![b.to_string()], Error::ArityMismatch(b.n(), spec.n).to_string());
        return rep;
    }
    let pts = window.points();
    let gens: Vec<Vec<AlgebraElement>> = pts.iter().map(|r| generators_at(spec, r)).collect();
    let mut images: Vec<Vec<AlgebraElement>> = Vec::with_capacity(pts.len());
    for (r, gs) in pts.iter().zip(&gens) {
        let mut row = Vec::with_capacity(gs.len());
        for x in gs {
            match apply_automorphism(spec, b, x) {
                Ok(y) => row.push(y),
                Err(e) => {
                    rep.fail(vec![x.render(spec), r.to_string()], e.to_string());
                    return rep.finish();
                }
            }
        }
        images.push(row);
    }
    for a in 0..pts.len() {
        let basis_r = spec.local_basis(&pts[a]).expect("arity");
        for c in a..pts.len() {
            let basis_s = spec.local_basis(&pts[c]).expect("arity");
            for (i, x) in gens[a].iter().enumerate() {
                for (j, y) in gens[c].iter().enumerate() {
                    rep.count("generator_pairs", 1);
                    let lhs = bracket(spec, x, y).and_then(|z| apply_automorphism(spec, b, &z));
                    let rhs = bracket(spec, &images[a][i], &images[c][j]);
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => {}
                        (Ok(l), Ok(r)) => rep.fail(
                            vec![render_generator(spec, &basis_r, i), render_generator(spec, &basis_s, j)],
                            l.sub(&r).render(spec),
                        ),
                        (Err(e), _) | (_, Err(e)) => rep.fail(
                            vec![render_generator(spec, &basis_r, i), render_generator(spec, &basis_s, j)],
                            e.to_string(),
                        ),
                    }
                }
            }
        }
    }
    rep.finish()
}

fn coords_at(e: &AlgebraElement, q: &DegreeVector, len: usize) -> Vec<Scalar> {
    e.component(q).cloned().unwrap_or_else(|| vec![Scalar::zero(); len])
}

/// Span comparison `B(K) = K_B` in `τ(S_N)`, degree by degree: `K` at `s` is
/// spanned by `K(u,s)` with `(u, bar s) = 0`, and `K_B` at `Bs` by
/// `K(Br, Bs)` for integer `r != 0` with `(r, bar s) = 0`, here enumerated
/// in the cube of radius `search`.
pub fn verify_kernel_image(spec: &AlgebraSpec, b: &IntegralMatrix, window: &Window, search: i64) -> VerificationReport {
    let mut rep = VerificationReport::new("kernel-image", spec.family.name(), spec.n, Some(window.radius));
    rep.note(format!("B = {b}"));
    if spec.family != Family::TauS || spec.n % 2 != 0 {
        rep.fail(vec![spec.label()], "B(K) = K_B is stated on tauS with even N".into());
        return rep;
    }
    let n = spec.n;
    let cube: Vec<DegreeVector> = Window::new(search, n).iter().filter(|r| !r.is_zero()).collect();
    for s in window.iter().filter(|s| !s.is_zero()) {
        let q = b.apply(&s);
        let len = spec.local_basis(&q).expect("arity").len();
        let bs = bar(&s).expect("even arity");
        let row = vec![bs.coords().iter().map(|&c| Scalar::from_int(c)).collect::<Vec<_>>()];
        let mut image = Vec::new();
        for u in nullspace(&Matrix::from_rows(row)) {
            let k = AlgebraElement::k(spec, &RationalVector::new(u), &s).expect("central element");
            let bk = apply_automorphism(spec, b, &k).expect("tauS is B-stable");
            image.push(coords_at(&bk, &q, len));
        }
        let mut kb = Vec::new();
        for r in cube.iter().filter(|r| r.dot(&bs) == 0) {
            let k = AlgebraElement::k(spec, &b.apply(r).to_rational(), &q).expect("central element");
            kb.push(coords_at(&k, &q, len));
        }
        rep.count("degrees", 1);
        let (ri, rk) = (rank_of_rows(&image), rank_of_rows(&kb));
        let mut both = image.clone();
        both.extend(kb.iter().cloned());
        let ru = rank_of_rows(&both);
        if ri != ru || rk != ru {
            rep.fail(vec![s.to_string(), q.to_string()], format!("rank B(K) = {ri}, rank K_B = {rk}, joint {ru}"));
        }
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::dv;
    use crate::simple_lie::build_sl;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shear_examples() {
        assert_eq!(shear_matrix(1, 1, 2).unwrap().rows(), &[vec![1, 1], vec![0, 1]]);
        for a in 1..6 {
            let b = shear_matrix(a, 1, 2).unwrap();
            assert_eq!(b.det(), 1);
            assert_eq!(b.inverse().rows(), &[vec![1, -1], vec![1 - a, a]]);
        }
        assert!(shear_matrix(0, 1, 2).is_err());
        let b4 = shear_matrix(2, 2, 4).unwrap();
        assert_eq!(b4.rows()[1], vec![0, 2, 0, 1]);
        assert_eq!(b4.rows()[3], vec![0, 1, 0, 1]);
        assert!(IntegralMatrix::new(vec![vec![2, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn identity_and_shear_on_degrees() {
        let g = build_sl(2).unwrap();
        let spec = AlgebraSpec::new(Family::FullToroidal, 2, Some(g)).unwrap();
        let x = AlgebraElement::x(&spec, 1, &dv(&[2, -1])).unwrap();
        assert_eq!(apply_automorphism(&spec, &IntegralMatrix::identity(2), &x).unwrap(), x);
        let b = shear_matrix(1, 1, 2).unwrap();
        let s = dv(&[3, 2]);
        assert_eq!(b.inverse().apply(&s), dv(&[1, 2]));
    }

    #[test]
    fn random_matrices_are_unimodular_and_homomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = build_sl(2).unwrap();
        let spec = AlgebraSpec::new(Family::TauS, 2, Some(g)).unwrap();
        for _ in 0..2 {
            let b = random_unimodular(2, 6, &mut rng);
            assert_eq!(b.det().abs(), 1);
            assert_eq!(b.mul(&b.inverse()), IntegralMatrix::identity(2));
            assert!(verify_homomorphism(&spec, &b, &Window::new(1, 2)).passed());
        }
    }

    #[test]
    fn kernel_image_small() {
        let g = build_sl(2).unwrap();
        let spec = AlgebraSpec::new(Family::TauS, 4, Some(g)).unwrap();
        let b = shear_matrix(2, 2, 4).unwrap();
        let rep = verify_kernel_image(&spec, &b, &Window::new(1, 4), 1);
        assert!(rep.passed(), "{rep}");
    }
}
