//! `V(λ̄) ⊗ V_N ⊗ A` over `τ(H_N)`: `g ⊗ A` acts on the first factor with a
//! grading shift, `H̃_N` acts on `V_N ⊗ A` as a jet module, and `Z/K` acts
//! as zero.

use serde_json::{json, Value};

use super::jet::JetModule;
use super::module::GradedModule;
use crate::algebra::{AlgebraSpec, Family, GenKind, LocalBasis, Slot};
use crate::degree::{DegreeVector, RationalVector, Window};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::simple_lie::{irrep, FiniteModule, SimpleLieDatum};

#[derive(Clone, Debug)]
pub struct RealizationModule {
    pub spec: AlgebraSpec,
    pub top: FiniteModule,
    pub jet: JetModule,
}

pub fn realization_module(g: SimpleLieDatum, highest: &[i64], jet: JetModule) -> Result<RealizationModule> {
    let top = irrep(&g, highest)?;
    let spec = AlgebraSpec::new(Family::TauH, jet.n(), Some(g))?;
    Ok(RealizationModule { spec, top, jet })
}

impl RealizationModule {
    pub fn fiber_dim(&self) -> usize {
        self.jet.dim()
    }

    /// Column vectors `v_λ ⊗ e_b` spanning the expected highest weight space.
    pub fn expected_top(&self) -> Vec<Vec<Scalar>> {
        let fd = self.fiber_dim();
        (0..fd)
            .map(|b| {
                let mut v = vec![Scalar::from_int(0); self.dim()];
                v[self.top.highest_vector * fd + b] = Scalar::from_int(1);
                v
            })
            .collect()
    }
}

impl GradedModule for RealizationModule {
    fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    fn dim(&self) -> usize {
        self.top.dim * self.jet.dim()
    }

    fn generator_matrix(&self, basis: &LocalBasis, i: usize, k: &DegreeVector) -> Matrix {
        let gen = &basis.gens[i];
        let fd = self.jet.dim();
        match gen.kind {
            GenKind::X(a) => self.top.action[a].kron(&Matrix::identity(fd)),
            GenKind::K => Matrix::zeros(self.dim(), self.dim()),
            GenKind::D => {
                let on_jet = match basis.d {
                    Slot::Full => {
                        let mut m = Matrix::zeros(fd, fd);
                        for (j, &u) in gen.vec.coords().iter().enumerate() {
                            if u != 0 {
                                m = &m + &self.jet.d_op(j, k).scale(&Scalar::from_int(u));
                            }
                        }
                        m
                    }
                    // the line generator is D(bar r, r) = h_r
                    _ => self.jet.h_op(&basis.degree, k),
                };
                Matrix::identity(self.top.dim).kron(&on_jet)
            }
        }
    }

    fn finite_weights(&self) -> Vec<Vec<i64>> {
        let fd = self.jet.dim();
        self.top.weights.iter().flat_map(|w| std::iter::repeat(w.clone()).take(fd)).collect()
    }

    fn delta_shift(&self) -> RationalVector {
        self.jet.u.clone()
    }

    fn kind(&self) -> &'static str {
        "realization"
    }

    fn parameters(&self) -> Value {
        json!({
            "highest_weight": self.top.highest_weight,
            "fiber": self.jet.fiber.label(),
            "profile": self.jet.profile.to_string(),
            "u": self.jet.u.to_string(),
            "w": self.jet.w.to_string(),
        })
    }

    fn label(&self) -> String {
        format!("realization[V{:?} ⊗ {}]", self.top.highest_weight, self.jet.label())
    }
}

/// Every central generator acts as zero on every window grade.
pub fn verify_center_trivial<M: GradedModule + ?Sized>(module: &M, window: &Window) -> VerificationReport {
    let spec = module.spec();
    let mut rep = VerificationReport::new("center-trivial", spec.family.name(), spec.n, Some(window.radius));
    for r in window.iter() {
        let basis = match spec.local_basis(&r) {
            Ok(b) => b,
            Err(e) => {
                rep.fail(vec![r.to_string()], e.to_string());
                continue;
            }
        };
        for i in basis.k_offset()..basis.d_offset() {
            for k in window.iter() {
                rep.count("checks", 1);
                let m = module.generator_matrix(&basis, i, &k);
                if !m.is_zero() {
                    rep.fail(vec![format!("K{} at {r}", basis.gens[i].vec), format!("grade {k}")], format!("{m:?}"));
                }
            }
        }
    }
    rep.finish()
}

/// Dimension of the level-zero highest weight space at each window grade,
/// compared with `dim V_N`.
pub fn verify_top_dimension(module: &RealizationModule, window: &Window) -> Result<VerificationReport> {
    let spec = &module.spec;
    if window.arity != spec.n {
        return Err(Error::ArityMismatch(window.arity, spec.n));
    }
    let mut rep = VerificationReport::new("top-dimension", spec.family.name(), spec.n, Some(window.radius));
    let expected = module.fiber_dim();
    let top = module.expected_top();
    for k in window.iter() {
        let space = super::module::highest_weight_space(module, crate::algebra::Decomposition::LevelZero, window, &k)?;
        rep.count("grades", 1);
        if space.len() != expected {
            rep.fail(vec![format!("grade {k}")], format!("dimension {} vs {expected}", space.len()));
            continue;
        }
        let rows = [space.clone(), top.clone()].concat();
        if crate::linalg::rank_of_rows(&rows) != expected {
            rep.fail(vec![format!("grade {k}")], "highest weight space is not v_λ ⊗ V_N".into());
        }
    }
    Ok(rep.finish())
}
