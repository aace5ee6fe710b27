//! Evaluation modules `V(λ_1) ⊗ … ⊗ V(λ_p) ⊗ A` for the toroidal algebra:
//! `X ⊗ t^r` acts by `Σ_i a_i^r` times `X` on the `i`-th factor, with
//! `a_i^r = Π_j a_{ij}^{r_j}`. The center acts as zero.

use num::traits::{One, Zero};
use serde_json::{json, Value};

use super::module::GradedModule;
use crate::algebra::{AlgebraSpec, Family, GenKind, LocalBasis};
use crate::degree::{DegreeVector, RationalVector, Window};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::simple_lie::{irrep, FiniteModule, SimpleLieDatum};

#[derive(Clone, Debug)]
pub struct EvaluationModule {
    pub spec: AlgebraSpec,
    /// one point of `(Q^×)^N` per factor
    pub points: Vec<RationalVector>,
    pub factors: Vec<FiniteModule>,
    pub shift: RationalVector,
    /// `embedded[i][a]`: basis element `a` acting on factor `i` of the tensor product
    embedded: Vec<Vec<Matrix>>,
    weights: Vec<Vec<i64>>,
    dim: usize,
}

fn power(p: &RationalVector, r: &DegreeVector) -> Scalar {
    p.0.iter().zip(r.coords()).map(|(a, &e)| a.pow(e as i32)).product()
}

impl EvaluationModule {
    pub fn new(g: SimpleLieDatum, points: Vec<RationalVector>, highest: &[Vec<i64>]) -> Result<EvaluationModule> {
        if points.is_empty() {
            return Err(Error::Precondition("an evaluation module needs at least one point".into()));
        }
        if points.len() != highest.len() {
            return Err(Error::ArityMismatch(points.len(), highest.len()));
        }
        let n = points[0].arity();
        for (i, p) in points.iter().enumerate() {
            if p.arity() != n {
                return Err(Error::ArityMismatch(p.arity(), n));
            }
            if p.0.iter().any(|c| c.is_zero()) {
                return Err(Error::Precondition(format!("point {p} has a zero coordinate")));
            }
            if points[..i].contains(p) {
                return Err(Error::Precondition(format!("point {p} is repeated")));
            }
        }
        let factors: Vec<FiniteModule> = highest.iter().map(|h| irrep(&g, h)).collect::<Result<_>>()?;
        let dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
        let dim: usize = dims.iter().product();
        let embedded = (0..factors.len())
            .map(|i| {
                (0..g.dim)
                    .map(|a| {
                        let mut m = Matrix::identity(1);
                        for (j, f) in factors.iter().enumerate() {
                            let piece = if i == j { f.action[a].clone() } else { Matrix::identity(f.dim) };
                            m = m.kron(&piece);
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let mut weights = Vec::with_capacity(dim);
        for mut idx in 0..dim {
            let mut w = vec![0i64; g.rank];
            for f in factors.iter().rev() {
                let local = idx % f.dim;
                idx /= f.dim;
                for (c, x) in w.iter_mut().zip(&f.weights[local]) {
                    *c += x;
                }
            }
            weights.push(w);
        }
        let spec = AlgebraSpec::new(Family::Toroidal, n, Some(g))?;
        Ok(EvaluationModule { spec, points, factors, shift: RationalVector::zero(n), embedded, weights, dim })
    }

    pub fn with_shift(mut self, shift: RationalVector) -> Result<EvaluationModule> {
        if shift.arity() != self.spec.n {
            return Err(Error::ArityMismatch(shift.arity(), self.spec.n));
        }
        self.shift = shift;
        Ok(self)
    }

    /// `a_i^r` for every factor.
    pub fn coefficients(&self, r: &DegreeVector) -> Vec<Scalar> {
        self.points.iter().map(|p| power(p, r)).collect()
    }

    /// `Σ_i a_i^r ρ_i(X_a)`
    pub fn x_matrix(&self, a: usize, r: &DegreeVector) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in self.coefficients(r).iter().enumerate() {
            m = &m + &self.embedded[i][a].scale(c);
        }
        m
    }

    /// `(X_a ⊗ t^r)(v ⊗ t^q)`
    pub fn evaluation_action(&self, a: usize, r: &DegreeVector, v: &[Scalar], q: &DegreeVector) -> (Vec<Scalar>, DegreeVector) {
        (self.x_matrix(a, r).apply(v), q.add(r))
    }

    /// The tensor product of the factor highest weight vectors.
    pub fn top_vector(&self) -> Vec<Scalar> {
        let mut idx = 0;
        for f in &self.factors {
            idx = idx * f.dim + f.highest_vector;
        }
        let mut v = vec![Scalar::zero(); self.dim];
        v[idx] = Scalar::one();
        v
    }

    /// `Σ_i λ_i(h) a_i^r ≠ 0` for some simple coroot `h`, at every window `r`.
    pub fn irreducibility_certificate(&self, window: &Window) -> VerificationReport {
        let mut rep = VerificationReport::new("evaluation-certificate", self.spec.family.name(), self.spec.n, Some(window.radius));
        let rank = self.factors[0].highest_weight.len();
        for r in window.iter() {
            let coeff = self.coefficients(&r);
            let ok = (0..rank).any(|j| {
                let s: Scalar = self
                    .factors
                    .iter()
                    .zip(&coeff)
                    .map(|(f, c)| c * &Scalar::from_int(f.highest_weight[j]))
                    .sum();
                !s.is_zero()
            });
            rep.count("degrees", 1);
            if !ok {
                rep.fail(vec![format!("r={r}")], "Σ λ_i(h) a_i^r vanishes for every simple coroot".into());
            }
        }
        if rep.passed() {
            rep.note(format!("verified on window R={}", window.radius));
        }
        rep.finish()
    }
}

impl GradedModule for EvaluationModule {
    fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn generator_matrix(&self, basis: &LocalBasis, i: usize, k: &DegreeVector) -> Matrix {
        let gen = &basis.gens[i];
        match gen.kind {
            GenKind::X(a) => self.x_matrix(a, &basis.degree),
            GenKind::K => Matrix::zeros(self.dim, self.dim),
            GenKind::D => {
                // only the degree derivations at degree zero occur in the toroidal family
                let ev: Scalar = gen
                    .vec
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(j, &u)| Scalar::from_int(u) * (Scalar::from_int(k.coords()[j]) + &self.shift.0[j]))
                    .sum();
                Matrix::identity(self.dim).scale(&ev)
            }
        }
    }

    fn finite_weights(&self) -> Vec<Vec<i64>> {
        self.weights.clone()
    }

    fn delta_shift(&self) -> RationalVector {
        self.shift.clone()
    }

    fn kind(&self) -> &'static str {
        "evaluation"
    }

    fn parameters(&self) -> Value {
        json!({
            "g": format!("sl{}", self.spec.g.as_ref().map_or(0, |g| g.n)),
            "N": self.spec.n,
            "points": self.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "highest_weights": self.factors.iter().map(|f| f.highest_weight.clone()).collect::<Vec<_>>(),
            "shift": self.shift.to_string(),
        })
    }

    fn label(&self) -> String {
        let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        let hw: Vec<String> = self.factors.iter().map(|f| format!("{:?}", f.highest_weight)).collect();
        format!("evaluation[{} at {}]", hw.join("⊗"), pts.join(","))
    }
}
