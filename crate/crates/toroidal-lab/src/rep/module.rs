//! Modules whose graded pieces all share one finite basis, with the checks
//! that run on any of them.
//!
//! Every grade carries the same basis, so actions are materialized on demand
//! and nothing a check touches ever falls outside the module.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::sweep::{render_generator, BasisCache};
use crate::algebra::tensor::pair_table_with;
use crate::algebra::triangular::generator_part;
use crate::algebra::{AlgebraSpec, Decomposition, Family, LocalBasis, Part};
use crate::degree::{DegreeVector, RationalVector, Window};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve, Matrix};
use crate::report::{Status, VerificationReport};
use crate::scalar::Scalar;
use crate::simple_lie::SimpleLieDatum;

pub trait GradedModule {
    fn spec(&self) -> &AlgebraSpec;
    /// dimension of every graded piece
    fn dim(&self) -> usize;
    /// generator `i` of `basis` (at degree `r`) as a map from grade `k` to `k + r`
    fn generator_matrix(&self, basis: &LocalBasis, i: usize, k: &DegreeVector) -> Matrix;
    /// Dynkin labels of each basis vector
    fn finite_weights(&self) -> Vec<Vec<i64>>;
    /// `d_i` acts on grade `k` by `k_i + shift_i`
    fn delta_shift(&self) -> RationalVector;
    fn kind(&self) -> &'static str;
    fn parameters(&self) -> Value;
    fn label(&self) -> String;
}

/// `{kind, parameters, window, graded-dims}`
pub fn module_manifest<M: GradedModule + ?Sized>(module: &M, window: &Window) -> Value {
    let dims: BTreeMap<String, usize> = window.iter().map(|k| (k.to_string(), module.dim())).collect();
    json!({
        "kind": module.kind(),
        "parameters": module.parameters(),
        "window": window.radius,
        "graded-dims": dims,
    })
}

/// One generator's action matrix as exact rational CSV, one row per line.
pub fn action_csv<M: GradedModule + ?Sized>(module: &M, basis: &LocalBasis, i: usize, k: &DegreeVector) -> String {
    let m = module.generator_matrix(basis, i, k);
    (0..m.rows())
        .map(|a| m.row(a).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
}

pub(crate) fn datum(spec: &AlgebraSpec) -> Result<&SimpleLieDatum> {
    spec.g.as_deref().ok_or_else(|| Error::Precondition(format!("{} has no finite part", spec.label())))
}

/// Memoized generator matrices keyed by degree and source grade.
pub(crate) struct ActionCache<'a, M: GradedModule + ?Sized> {
    module: &'a M,
    bases: BasisCache<'a>,
    map: HashMap<(DegreeVector, DegreeVector), Arc<Vec<Matrix>>>,
}

impl<'a, M: GradedModule + ?Sized> ActionCache<'a, M> {
    pub(crate) fn new(module: &'a M) -> ActionCache<'a, M> {
        ActionCache { module, bases: BasisCache::new(module.spec()), map: HashMap::new() }
    }

    pub(crate) fn basis(&mut self, r: &DegreeVector) -> Arc<LocalBasis> {
        self.bases.get(r)
    }

    pub(crate) fn get(&mut self, r: &DegreeVector, k: &DegreeVector) -> Arc<Vec<Matrix>> {
        let key = (r.clone(), k.clone());
        if let Some(v) = self.map.get(&key) {
            return v.clone();
        }
        let basis = self.bases.get(r);
        let mats: Vec<Matrix> = (0..basis.len()).map(|i| self.module.generator_matrix(&basis, i, k)).collect();
        let mats = Arc::new(mats);
        self.map.insert(key, mats.clone());
        mats
    }
}

fn window_ok(rep: &mut VerificationReport, window: &Window, n: usize) -> bool {
    if window.arity != n {
        rep.fail(vec![format!("arity {}", window.arity)], format!("module has N={n}"));
        return false;
    }
    true
}

/// `ρ([x, y]) = ρ(x)ρ(y) - ρ(y)ρ(x)` for every generator pair at window
/// degrees `r, s`, on every window grade.
pub fn verify_representation<M: GradedModule + ?Sized>(module: &M, window: &Window) -> VerificationReport {
    let spec = module.spec();
    let mut rep = VerificationReport::new("representation", spec.family.name(), spec.n, Some(window.radius));
    rep.note(module.label());
    if !window_ok(&mut rep, window, spec.n) {
        return rep.finish();
    }
    let mut cache = ActionCache::new(module);
    let pts = window.points();
    let dim = module.dim();
    for (a, r) in pts.iter().enumerate() {
        let br = cache.basis(r);
        for s in &pts[a..] {
            let bs = cache.basis(s);
            let q = r.add(s);
            let bq = cache.basis(&q);
            let table = match pair_table_with::<Scalar>(spec, &br, &bs, &bq, true) {
                Ok(t) => t,
                Err(e) => {
                    rep.fail(vec![r.to_string(), s.to_string()], e.to_string());
                    continue;
                }
            };
            for k in &pts {
                let xr_k = cache.get(r, k);
                let ys_k = cache.get(s, k);
                let xr_sk = cache.get(r, &s.add(k));
                let ys_rk = cache.get(s, &r.add(k));
                let zq_k = cache.get(&q, k);
                for i in 0..br.len() {
                    for j in 0..bs.len() {
                        let lhs = &(&xr_sk[i] * &ys_k[j]) - &(&ys_rk[j] * &xr_k[i]);
                        let mut rhs = Matrix::zeros(dim, dim);
                        for (l, c) in table.get(i, j) {
                            rhs = &rhs + &zq_k[*l as usize].scale(c);
                        }
                        rep.count("checks", 1);
                        let res = &lhs - &rhs;
                        if !res.is_zero() {
                            rep.fail(
                                vec![
                                    render_generator(spec, &br, i),
                                    render_generator(spec, &bs, j),
                                    format!("grade {k}"),
                                ],
                                format!("{res:?}"),
                            );
                        }
                    }
                }
            }
        }
    }
    rep.finish()
}

/// Local nilpotency of real root vectors, integrality of `λ(α^∨)` on every
/// weight, and equal multiplicities along window-representable reflections.
pub fn verify_integrability<M: GradedModule + ?Sized>(module: &M, window: &Window, bound: usize) -> VerificationReport {
    let spec = module.spec();
    let mut rep = VerificationReport::new("integrability", spec.family.name(), spec.n, Some(window.radius));
    rep.note(module.label());
    if bound < 1 {
        rep.fail(vec!["bound 0".into()], "bound must be at least 1".into());
        return rep.finish();
    }
    if !window_ok(&mut rep, window, spec.n) {
        return rep.finish();
    }
    let g = match datum(spec) {
        Ok(g) => g,
        Err(e) => {
            rep.fail(vec![], e.to_string());
            return rep.finish();
        }
    };
    let mut cache = ActionCache::new(module);
    let pts = window.points();
    let dim = module.dim();
    let mut max_index = 0u64;
    for root in &g.roots {
        for r in &pts {
            for k in &pts {
                let mut power = Matrix::identity(dim);
                let mut grade = k.clone();
                let mut found = None;
                for step in 1..=bound {
                    let x = cache.get(r, &grade)[root.vector].clone();
                    power = &x * &power;
                    grade = grade.add(r);
                    if power.is_zero() {
                        found = Some(step);
                        break;
                    }
                }
                rep.count("root_vector_checks", 1);
                match found {
                    Some(step) => max_index = max_index.max(step as u64),
                    None => {
                        rep.downgrade(Status::Inconclusive);
                        rep.count("not_nilpotent_within_bound", 1);
                    }
                }
            }
        }
    }
    rep.count("max_nilpotency_index", max_index);
    // Cartan action is diagonal with the advertised weights
    let weights = module.finite_weights();
    let zero = DegreeVector::zero(spec.n);
    for k in &pts {
        let mats = cache.get(&zero, k);
        for i in 0..g.rank {
            let coroot = g.coroot_coords(g.simple_root(i));
            let mut h = Matrix::zeros(dim, dim);
            for (a, c) in coroot.iter().enumerate() {
                if !c.is_zero() {
                    h = &h + &mats[a].scale(c);
                }
            }
            let mut expect = Matrix::zeros(dim, dim);
            for (v, w) in weights.iter().enumerate() {
                expect.set(v, v, Scalar::from_int(w[i]));
            }
            rep.count("cartan_checks", 1);
            if h != expect {
                rep.fail(vec![format!("h_{}", i + 1), format!("grade {k}")], format!("{:?}", &h - &expect));
            }
        }
    }
    let mut mult: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for w in &weights {
        *mult.entry(w.clone()).or_insert(0) += 1;
    }
    let cartan = g.cartan_matrix();
    for (w, &m) in &mult {
        for root in &g.roots {
            // simply laced: λ(α^∨) = Σ c_i λ_i
            let pairing: i64 = root.coords.iter().zip(w).map(|(c, l)| c * l).sum();
            rep.count("coroot_integrality_checks", 1);
            let reflected: Vec<i64> = (0..g.rank)
                .map(|j| w[j] - pairing * root.coords.iter().enumerate().map(|(i, c)| c * cartan[i][j]).sum::<i64>())
                .collect();
            for r in &pts {
                for k in &pts {
                    let k2 = k.sub(&r.scale(pairing));
                    if !window.contains(&k2) {
                        continue;
                    }
                    rep.count("reflection_checks", 1);
                    let m2 = mult.get(&reflected).copied().unwrap_or(0);
                    if m2 != m {
                        rep.fail(
                            vec![format!("weight {w:?} at {k}"), format!("reflection in {:?}+δ{r}", root.coords)],
                            format!("multiplicity {m} vs {m2}"),
                        );
                    }
                }
            }
        }
    }
    rep.note("integrality of λ(α^∨) holds by construction of integer Dynkin labels; Cartan diagonals confirmed exactly");
    rep.finish()
}

fn check_decomposition(spec: &AlgebraSpec, dec: Decomposition) -> Result<()> {
    if dec != Decomposition::LevelZero && spec.family != Family::TauH {
        return Err(Error::Precondition(format!("decomposition {dec} lives on tauH, not {}", spec.label())));
    }
    if dec == Decomposition::N2 && spec.n != 2 {
        return Err(Error::Precondition(format!("decomposition n2 needs N=2, got {}", spec.n)));
    }
    Ok(())
}

/// Columns spanning `{v : x v = 0 for all positive generators x}` at grade
/// `k`, with the positive generators taken from every degree in `window`.
pub fn highest_weight_space<M: GradedModule + ?Sized>(
    module: &M,
    dec: Decomposition,
    window: &Window,
    k: &DegreeVector,
) -> Result<Vec<Vec<Scalar>>> {
    let spec = module.spec();
    check_decomposition(spec, dec)?;
    if window.arity != spec.n || k.arity() != spec.n {
        return Err(Error::ArityMismatch(window.arity.max(k.arity()), spec.n));
    }
    let mut cache = ActionCache::new(module);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in window.iter() {
        let basis = cache.basis(&r);
        let mats = cache.get(&r, k);
        for i in 0..basis.len() {
            let part = generator_part(spec, dec, &basis, i);
            if matches!(part, Part::Plus | Part::PlusPlus) {
                for a in 0..mats[i].rows() {
                    let row = mats[i].row(a);
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row.to_vec());
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok((0..module.dim()).map(|i| unit(module.dim(), i)).collect());
    }
    Ok(nullspace(&Matrix::from_rows(rows)))
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// The A-action recovered from `h_α ⊗ t^r` on the highest weight space.
#[derive(Clone, Debug)]
pub struct Associativization {
    /// `λ(h_α)`
    pub lambda_h: Scalar,
    pub lambda_alpha: Scalar,
    pub mu_alpha: Scalar,
    /// `t^r` equals the bare grading shift on the highest weight space
    pub tautological: bool,
    /// highest weight space basis (columns in module coordinates)
    pub space: Vec<Vec<Scalar>>,
    pub report: VerificationReport,
}

/// Expresses `op` restricted to the column span `cols` in those columns.
fn restrict(op: &Matrix, cols: &[Vec<Scalar>]) -> Option<Matrix> {
    let b = Matrix::from_rows(cols.to_vec()).transpose();
    let image = op * &b;
    let mut out = Matrix::zeros(cols.len(), cols.len());
    for j in 0..cols.len() {
        let x = solve(&b, &image.column(j))?;
        for (i, v) in x.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Some(out)
}

/// Scalar `c` with `a = c b`, if any.
fn ratio(a: &Matrix, b: &Matrix) -> Option<Scalar> {
    let pos = b.entries().iter().position(|c| !c.is_zero())?;
    let c = &a.entries()[pos] / &b.entries()[pos];
    (a == &b.scale(&c)).then_some(c)
}

/// Extracts `λ_α`, `μ_α` from `T_r = h_α ⊗ t^r` on the highest weight
/// space (for the level-zero decomposition), sets `t^r = T_r / λ_α`,
/// `t^0 = T_0 / λ(h_α)` and checks `t^r t^s = t^{r+s}` on the window.
pub fn associativize<M: GradedModule + ?Sized>(module: &M, root: usize, window: &Window) -> Result<Associativization> {
    let spec = module.spec();
    let g = datum(spec)?;
    let alpha = g.roots.get(root).ok_or_else(|| Error::Precondition(format!("no root {root}")))?;
    let n = spec.n;
    let zero = DegreeVector::zero(n);
    let space = highest_weight_space(module, Decomposition::LevelZero, window, &zero)?;
    if space.is_empty() {
        return Err(Error::Precondition("highest weight space is zero".into()));
    }
    let coroot = g.coroot_coords(alpha);
    let mut cache = ActionCache::new(module);
    let mut t_op = |r: &DegreeVector, k: &DegreeVector| -> Result<Matrix> {
        let mats = cache.get(r, k);
        let mut h = Matrix::zeros(module.dim(), module.dim());
        for (a, c) in coroot.iter().enumerate() {
            if !c.is_zero() {
                h = &h + &mats[a].scale(c);
            }
        }
        restrict(&h, &space)
            .ok_or_else(|| Error::NonAssociativizable(format!("h_α⊗t^{r} leaves the highest weight space at grade {k}")))
    };
    let d = space.len();
    let id = Matrix::identity(d);
    let t0 = t_op(&zero, &zero)?;
    let lambda_h = ratio(&t0, &id)
        .ok_or_else(|| Error::NonAssociativizable(format!("h_α does not act by a scalar: {t0:?}")))?;
    if lambda_h.is_zero() {
        return Err(Error::Precondition("λ(h_α) = 0".into()));
    }
    let pts: Vec<DegreeVector> = window.points();
    let mut lambda_alpha: Option<Scalar> = None;
    let mut mu_alpha: Option<Scalar> = None;
    let mut rep = VerificationReport::new("associativize", spec.family.name(), n, Some(window.radius));
    rep.note(module.label());
    for r in &pts {
        for s in &pts {
            let rs = r.add(s);
            let lhs = &t_op(r, s)? * &t_op(s, &zero)?;
            if r.is_zero() || s.is_zero() {
                continue;
            }
            if rs.is_zero() {
                let c = ratio(&lhs, &id).ok_or_else(|| {
                    Error::NonAssociativizable(format!("T_{r} T_{s} is not a scalar: {lhs:?}"))
                })?;
                let mu = &c / &lambda_h;
                match &mu_alpha {
                    None => mu_alpha = Some(mu),
                    Some(m) if *m == mu => {}
                    Some(m) => {
                        return Err(Error::NonAssociativizable(format!("μ_α is {m} at one pair and {mu} at ({r}, {s})")))
                    }
                }
                continue;
            }
            let rhs = t_op(&rs, &zero)?;
            let c = ratio(&lhs, &rhs).ok_or_else(|| {
                Error::NonAssociativizable(format!("T_{r} T_{s} is not a multiple of T_{rs}: {lhs:?} vs {rhs:?}"))
            })?;
            match &lambda_alpha {
                None => lambda_alpha = Some(c),
                Some(l) if *l == c => {}
                Some(l) => {
                    return Err(Error::NonAssociativizable(format!(
                        "λ_α would depend on the degrees: {l} at one pair, {c} at ({r}, {s})"
                    )))
                }
            }
        }
    }
    let lambda_alpha = lambda_alpha.ok_or_else(|| Error::Precondition("window too small to extract λ_α".into()))?;
    let mu_alpha = mu_alpha.ok_or_else(|| Error::Precondition("window too small to extract μ_α".into()))?;
    if lambda_alpha.is_zero() {
        return Err(Error::NonAssociativizable("λ_α = 0".into()));
    }
    if &lambda_alpha * &lambda_alpha != &mu_alpha * &lambda_h {
        rep.fail(
            vec![format!("λ_α={lambda_alpha}"), format!("μ_α={mu_alpha}"), format!("λ(h_α)={lambda_h}")],
            "λ_α² ≠ μ_α λ(h_α)".into(),
        );
    }
    let mut tautological = true;
    let mut t = |r: &DegreeVector, k: &DegreeVector| -> Result<Matrix> {
        let scale = if r.is_zero() { lambda_h.recip() } else { lambda_alpha.recip() };
        Ok(t_op(r, k)?.scale(&scale))
    };
    for r in &pts {
        for k in &pts {
            let tr = t(r, k)?;
            if tr != id {
                tautological = false;
            }
            for s in &pts {
                let res = &(&t(r, &s.add(k))? * &t(s, k)?) - &t(&r.add(s), k)?;
                rep.count("tt_checks", 1);
                if !res.is_zero() {
                    rep.fail(vec![format!("t{r}"), format!("t{s}"), format!("grade {k}")], format!("{res:?}"));
                }
            }
        }
    }
    rep.note(format!("λ_α={lambda_alpha} μ_α={mu_alpha} λ(h_α)={lambda_h} tautological={tautological}"));
    Ok(Associativization { lambda_h, lambda_alpha, mu_alpha, tautological, space, report: rep.finish() })
}
