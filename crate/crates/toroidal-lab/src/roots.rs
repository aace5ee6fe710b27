//! Weights of `h̃ = h ⊕ Z_0 ⊕ D_0`, real roots `α + δ_r`, their co-roots and
//! reflections, truncated orbits and the partial order used for highest
//! weights.
//!
//! A weight is `λ̄ + Σ g_i δ_i + Σ s_i ω_i` with `λ̄` in Dynkin labels, so
//! `λ(α_i^∨) = alpha[i]`, `λ(d_i) = g_i` and `λ(K_i) = s_i`.

use std::collections::BTreeSet;
use std::fmt;

use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::degree::{DegreeVector, RationalVector};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::scalar::Scalar;
use crate::simple_lie::SimpleLieDatum;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    /// Dynkin labels of the finite part
    pub alpha: Vec<Scalar>,
    /// coefficients of `δ_1..δ_N`
    pub delta: Vec<Scalar>,
    /// coefficients of `ω_1..ω_N`
    pub omega: Vec<Scalar>,
}

impl Weight {
    pub fn zero(rank: usize, n: usize) -> Weight {
        Weight { alpha: vec![Scalar::zero(); rank], delta: vec![Scalar::zero(); n], omega: vec![Scalar::zero(); n] }
    }

    pub fn from_ints(alpha: &[i64], delta: &[i64], omega: &[i64]) -> Weight {
        let f = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect();
        Weight { alpha: f(alpha), delta: f(delta), omega: f(omega) }
    }

    /// `δ_r`
    pub fn delta_of(rank: usize, r: &DegreeVector) -> Weight {
        let mut w = Weight::zero(rank, r.arity());
        for (d, &c) in w.delta.iter_mut().zip(r.coords()) {
            *d = Scalar::from_int(c);
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().chain(&self.delta).chain(&self.omega).all(|x| x.is_zero())
    }

    fn zip(&self, o: &Weight, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Weight {
        let z = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).map(|(x, y)| f(x, y)).collect();
        Weight { alpha: z(&self.alpha, &o.alpha), delta: z(&self.delta, &o.delta), omega: z(&self.omega, &o.omega) }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, k: &Scalar) -> Weight {
        self.zip(self, |a, _| a * k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weights serialize")
    }

    pub fn from_json(s: &str) -> Result<Weight> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("weight: {e}")))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[Scalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}; δ {}; ω {}]", j(&self.alpha), j(&self.delta), j(&self.omega))
    }
}

/// `α + δ_r` with `α` in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealRoot {
    pub alpha: Vec<i64>,
    pub r: DegreeVector,
}

impl RealRoot {
    pub fn new(g: &SimpleLieDatum, alpha: &[i64], r: &DegreeVector) -> Result<RealRoot> {
        if g.root_index(alpha).is_none() {
            return Err(Error::Precondition(format!("{alpha:?} is not a root of sl_{}", g.n)));
        }
        Ok(RealRoot { alpha: alpha.to_vec(), r: r.clone() })
    }

    /// The root as a weight: finite part in Dynkin labels, delta part `r`.
    pub fn weight(&self, g: &SimpleLieDatum) -> Weight {
        let cm = g.cartan_matrix();
        let mut w = Weight::delta_of(g.rank, &self.r);
        for (j, a) in w.alpha.iter_mut().enumerate() {
            *a = Scalar::from_int((0..g.rank).map(|i| self.alpha[i] * cm[i][j]).sum());
        }
        w
    }
}

/// `γ^∨ = α^∨ + (2/(α,α)) Σ r_i K_i`: finite part in simple co-root
/// coordinates, central part as a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coroot {
    pub finite: Vec<Scalar>,
    pub central: RationalVector,
}

impl Coroot {
    /// The same element of `h̃` inside an algebra of the family.
    pub fn to_element(&self, spec: &AlgebraSpec) -> Result<AlgebraElement> {
        let g = spec.g.as_ref().ok_or_else(|| Error::Precondition("no finite part".into()))?;
        let zero = DegreeVector::zero(spec.n);
        let mut coords = vec![Scalar::zero(); spec.g_dim()];
        for (k, c) in self.finite.iter().enumerate() {
            let simple = g.simple_root(k);
            for (l, v) in g.coroot_coords(simple).iter().enumerate() {
                coords[l] += c * v;
            }
        }
        let mut e = AlgebraElement::from_coords(&zero, &{
            let b = spec.local_basis(&zero)?;
            let mut full = vec![Scalar::zero(); b.len()];
            full[..coords.len()].clone_from_slice(&coords);
            full
        });
        e = e.add(&AlgebraElement::k(spec, &self.central, &zero)?);
        Ok(e)
    }
}

/// `(α, α)` for a root in simple-root coordinates.
fn root_norm(g: &SimpleLieDatum, alpha: &[i64]) -> i64 {
    g.root_pairing(alpha, alpha)
}

pub fn coroot(g: &SimpleLieDatum, gamma: &RealRoot) -> Coroot {
    let aa = root_norm(g, &gamma.alpha);
    let finite = (0..g.rank)
        .map(|i| {
            let ai = g.root_pairing(&unit(g.rank, i), &unit(g.rank, i));
            Scalar::new(gamma.alpha[i] * ai, aa)
        })
        .collect();
    let central = RationalVector::new(gamma.r.coords().iter().map(|&c| Scalar::new(2 * c, aa)).collect());
    Coroot { finite, central }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `λ(h)` for `h = Σ finite_i α_i^∨ + K(central)`.
pub fn evaluate(lambda: &Weight, h: &Coroot) -> Scalar {
    let a: Scalar = lambda.alpha.iter().zip(&h.finite).map(|(x, y)| x * y).sum();
    let c: Scalar = lambda.omega.iter().zip(&h.central.0).map(|(x, y)| x * y).sum();
    a + c
}

/// Inverse Cartan matrix, the Gram matrix of the fundamental weights up to
/// the normalization `(α_i, α_i)`.
fn fundamental_gram(g: &SimpleLieDatum) -> Matrix {
    let d = g.rank;
    let cm = g.cartan_matrix();
    let sym = Matrix::from_rows(cm.iter().map(|row| row.iter().map(|&x| Scalar::from_int(x)).collect()).collect());
    let mut inv = Matrix::zeros(d, d);
    for j in 0..d {
        let mut e = vec![Scalar::zero(); d];
        e[j] = Scalar::one();
        let col = solve(&sym, &e).expect("Cartan matrix is invertible");
        for (i, v) in col.into_iter().enumerate() {
            inv.set(i, j, v);
        }
    }
    inv
}

/// The symmetric form on `h̃^*`: the transported g-form on finite parts,
/// `<δ_i, ω_j> = δ_ij`, all other basis pairings zero.
pub fn weight_pairing(g: &SimpleLieDatum, l: &Weight, m: &Weight) -> Scalar {
    let gram = fundamental_gram(g);
    let mut acc = Scalar::zero();
    for i in 0..g.rank {
        for j in 0..g.rank {
            let v = gram.get(i, j);
            if !v.is_zero() && !l.alpha[i].is_zero() && !m.alpha[j].is_zero() {
                acc += &(&l.alpha[i] * v) * &m.alpha[j];
            }
        }
    }
    for i in 0..l.delta.len() {
        acc += &l.delta[i] * &m.omega[i];
        acc += &l.omega[i] * &m.delta[i];
    }
    acc
}

/// `r_γ(λ) = λ - λ(γ^∨) γ`
pub fn reflect(g: &SimpleLieDatum, gamma: &RealRoot, lambda: &Weight) -> Weight {
    let c = evaluate(lambda, &coroot(g, gamma));
    if c.is_zero() {
        return lambda.clone();
    }
    lambda.sub(&gamma.weight(g).scale(&c))
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub weights: BTreeSet<Weight>,
    /// the closure was cut off at the iteration bound
    pub truncated: bool,
}

/// Closure of `{λ}` under the given reflections, at most `bound` rounds.
pub fn weyl_orbit(g: &SimpleLieDatum, lambda: &Weight, generators: &[RealRoot], bound: usize) -> Result<Orbit> {
    if bound == 0 {
        return Err(Error::Precondition("orbit bound must be at least 1".into()));
    }
    let mut weights = BTreeSet::from([lambda.clone()]);
    let mut frontier = vec![lambda.clone()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for gamma in generators {
                let v = reflect(g, gamma, w);
                if weights.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return Ok(Orbit { weights, truncated: false });
        }
    }
    // one more round decides whether anything was left out
    let truncated = frontier.iter().any(|w| generators.iter().any(|gm| !weights.contains(&reflect(g, gm, w))));
    Ok(Orbit { weights, truncated })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    /// `μ < λ`
    Less,
    /// `μ > λ`
    Greater,
    Equal,
    Incomparable,
}

/// `n` with `λ - μ = Σ n_i α_i + n_{d+m} δ_m + n_{d+2m} δ_{2m}`, integral.
fn order_coefficients(g: &SimpleLieDatum, diff: &Weight, m: usize) -> Option<(Vec<i64>, i64, i64)> {
    let n = diff.delta.len();
    if diff.omega.iter().any(|x| !x.is_zero()) {
        return None;
    }
    if diff.delta.iter().enumerate().any(|(i, x)| i != m - 1 && i != 2 * m - 1 && !x.is_zero()) {
        return None;
    }
    // Dynkin labels a = n · C, so n solves C^T n = a
    let cm = g.cartan_matrix();
    let ct = Matrix::from_rows((0..g.rank).map(|j| (0..g.rank).map(|i| Scalar::from_int(cm[i][j])).collect()).collect());
    let coeffs = solve(&ct, &diff.alpha)?;
    let ints: Option<Vec<i64>> = coeffs.iter().map(|c| c.to_i64()).collect();
    let (a, b) = (diff.delta[m - 1].to_i64()?, diff.delta[2 * m - 1].to_i64()?);
    debug_assert!(2 * m <= n);
    Some((ints?, a, b))
}

fn dominates(coeffs: &(Vec<i64>, i64, i64)) -> bool {
    let (fin, a, b) = coeffs;
    a - b > 0 || (a == b && *a > 0) || (*a == 0 && *b == 0 && fin.iter().all(|&x| x >= 0))
}

/// Compares `μ` against `λ` in the order with indices `m`, `2m` (one based).
pub fn order_compare(g: &SimpleLieDatum, lambda: &Weight, mu: &Weight, m: usize) -> Result<Order> {
    let n = lambda.delta.len();
    if m == 0 || 2 * m > n {
        return Err(Error::Precondition(format!("order index m={m} needs 1 <= m and 2m <= N={n}")));
    }
    let diff = lambda.sub(mu);
    if diff.is_zero() {
        return Ok(Order::Equal);
    }
    let Some(c) = order_coefficients(g, &diff, m) else {
        return Ok(Order::Incomparable);
    };
    if dominates(&c) {
        return Ok(Order::Less);
    }
    let neg = (c.0.iter().map(|x| -x).collect(), -c.1, -c.2);
    if dominates(&neg) {
        return Ok(Order::Greater);
    }
    Ok(Order::Incomparable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bracket, Family};
    use crate::degree::dv;
    use crate::simple_lie::build_sl;

    #[test]
    fn pairing_examples() {
        let g = build_sl(2).unwrap();
        let (r, s) = (dv(&[1, 2]), dv(&[3, -1]));
        assert!(weight_pairing(&g, &Weight::delta_of(1, &r), &Weight::delta_of(1, &s)).is_zero());
        let a = RealRoot::new(&g, &[1], &r).unwrap().weight(&g);
        let b = RealRoot::new(&g, &[-1], &s).unwrap().weight(&g);
        assert_eq!(weight_pairing(&g, &a, &b), Scalar::from_int(-2));
        let d1 = Weight::from_ints(&[0], &[1, 0], &[0, 0]);
        let w1 = Weight::from_ints(&[0], &[0, 0], &[1, 0]);
        assert_eq!(weight_pairing(&g, &d1, &w1), Scalar::one());
    }

    #[test]
    fn coroot_and_reflection() {
        let g = build_sl(2).unwrap();
        let c = Scalar::new(3, 2);
        let lambda = Weight { alpha: vec![Scalar::one()], delta: vec![Scalar::zero()], omega: vec![c.clone()] };
        let gamma = RealRoot::new(&g, &[1], &dv(&[1])).unwrap();
        assert_eq!(evaluate(&lambda, &coroot(&g, &gamma)), Scalar::one() + c.clone());
        let img = reflect(&g, &gamma, &lambda);
        assert_eq!(img, lambda.sub(&gamma.weight(&g).scale(&(Scalar::one() + c))));
        assert_eq!(reflect(&g, &gamma, &img), lambda);
        let zero_root = RealRoot::new(&g, &[1], &dv(&[0])).unwrap();
        assert_eq!(coroot(&g, &zero_root).finite, vec![Scalar::one()]);
    }

    #[test]
    fn coroot_is_the_sl2_triple_bracket() {
        let g = build_sl(3).unwrap();
        let spec = AlgebraSpec::new(Family::Toroidal, 2, Some(g.clone())).unwrap();
        for root in g.roots.iter() {
            let minus: Vec<i64> = root.coords.iter().map(|x| -x).collect();
            let neg = &g.roots[g.root_index(&minus).unwrap()];
            for r in [dv(&[0, 0]), dv(&[1, -2]), dv(&[2, 3])] {
                let x = AlgebraElement::x(&spec, root.vector, &r).unwrap();
                let y = AlgebraElement::x(&spec, neg.vector, &r.neg()).unwrap();
                let h = coroot(&g, &RealRoot::new(&g, &root.coords, &r).unwrap()).to_element(&spec).unwrap();
                assert_eq!(bracket(&spec, &x, &y).unwrap(), h, "{root:?} {r}");
            }
        }
    }

    #[test]
    fn orbits() {
        let g = build_sl(2).unwrap();
        let lambda = Weight::from_ints(&[1], &[0], &[0]);
        let finite = [RealRoot::new(&g, &[1], &dv(&[0])).unwrap()];
        let o = weyl_orbit(&g, &lambda, &finite, 4).unwrap();
        assert!(!o.truncated);
        let alpha = finite[0].weight(&g);
        assert_eq!(o.weights, BTreeSet::from([lambda.clone(), lambda.sub(&alpha)]));
        let z = weyl_orbit(&g, &Weight::zero(1, 1), &finite, 1).unwrap();
        assert_eq!(z.weights.len(), 1);
        let affine = [finite[0].clone(), RealRoot::new(&g, &[-1], &dv(&[1])).unwrap()];
        let lam = Weight::from_ints(&[1], &[0], &[2]);
        let o = weyl_orbit(&g, &lam, &affine, 3).unwrap();
        assert!(o.truncated);
        for w in &o.weights {
            for gm in &affine {
                assert!(evaluate(w, &coroot(&g, gm)).is_integer());
            }
        }
    }

    #[test]
    fn order_examples() {
        let g = build_sl(2).unwrap();
        let mu = Weight::from_ints(&[0], &[0, 0], &[1, 1]);
        let dm = Weight::from_ints(&[0], &[1, 0], &[0, 0]);
        assert_eq!(order_compare(&g, &mu.add(&dm), &mu, 1).unwrap(), Order::Less);
        let a1 = RealRoot::new(&g, &[1], &dv(&[0, 0])).unwrap().weight(&g);
        assert_eq!(order_compare(&g, &mu.add(&a1), &mu, 1).unwrap(), Order::Less);
        assert_eq!(order_compare(&g, &mu, &mu.add(&a1), 1).unwrap(), Order::Greater);
        assert_eq!(order_compare(&g, &mu, &mu, 1).unwrap(), Order::Equal);
        let w = Weight::from_ints(&[0], &[0, 0], &[1, 0]);
        assert_eq!(order_compare(&g, &mu.add(&w), &mu, 1).unwrap(), Order::Incomparable);
        let both = Weight::from_ints(&[0], &[2, 2], &[0, 0]);
        assert_eq!(order_compare(&g, &mu.add(&both), &mu, 1).unwrap(), Order::Less);
        assert!(order_compare(&g, &mu, &mu, 2).is_err());
    }

    #[test]
    fn json_shape() {
        let w = Weight { alpha: vec![Scalar::new(1, 2)], delta: vec![Scalar::from_int(1)], omega: vec![Scalar::zero()] };
        let j = w.to_json();
        assert_eq!(j, r#"{"alpha":["1/2"],"delta":["1"],"omega":["0"]}"#);
        assert_eq!(Weight::from_json(&j).unwrap(), w);
    }
}
