//! Truncated induced modules `M(W) = U(τ^-) ⊗ W` for the level-zero
//! decomposition of `τ(H_N)`, and their window-approximate simple quotients.
//!
//! Vectors are finite sums of PBW monomials `X_1(r_1) ⋯ X_j(r_j) · (w_b ⊗ t^k)`
//! with negative root vectors in non-decreasing order. Products are
//! straightened exactly, so images of windowed vectors may involve degrees
//! outside the window; only the spanning set is windowed.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num::traits::{One, Zero};
use serde_json::{json, Value};

use super::jet::JetModule;
use crate::algebra::tensor::{pair_table_with, PairTable};
use crate::algebra::triangular::generator_part;
use crate::algebra::{AlgebraSpec, Decomposition, Family, GenKind, LocalBasis, Part, Slot};
use crate::degree::{DegreeVector, Window};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Matrix};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::simple_lie::{irrep, SimpleLieDatum};

/// A part-0 module `C v_λ ⊗ V_N ⊗ A`: `h ⊗ t^r` acts by `λ(h)` times the
/// shift, `Z` by zero and `H̃_N` as the jet module.
#[derive(Clone, Debug)]
pub struct Top {
    pub spec: AlgebraSpec,
    pub highest: Vec<i64>,
    pub jet: JetModule,
    /// `λ(x_a)` for Cartan basis elements, zero elsewhere
    cartan: Vec<Scalar>,
}

impl Top {
    pub fn new(g: SimpleLieDatum, highest: &[i64], jet: JetModule) -> Result<Top> {
        let module = irrep(&g, highest)?;
        let hv = module.highest_vector;
        let cartan = (0..g.dim)
            .map(|a| if g.is_cartan(a) { module.action[a].get(hv, hv).clone() } else { Scalar::zero() })
            .collect();
        let spec = AlgebraSpec::new(Family::TauH, jet.n(), Some(g))?;
        Ok(Top { spec, highest: highest.to_vec(), jet, cartan })
    }

    pub fn dim(&self) -> usize {
        self.jet.dim()
    }

    /// A part-0 generator from grade `k` to grade `k + r`.
    pub fn matrix(&self, basis: &LocalBasis, i: usize, k: &DegreeVector) -> Result<Matrix> {
        let fd = self.dim();
        let gen = &basis.gens[i];
        match gen.kind {
            GenKind::X(a) => {
                if generator_part(&self.spec, Decomposition::LevelZero, basis, i) != Part::Zero {
                    return Err(Error::Precondition(format!("x_{a} is not in part 0")));
                }
                Ok(Matrix::identity(fd).scale(&self.cartan[a]))
            }
            GenKind::K => Ok(Matrix::zeros(fd, fd)),
            GenKind::D => Ok(match basis.d {
                Slot::Full => {
                    let mut m = Matrix::zeros(fd, fd);
                    for (j, &u) in gen.vec.coords().iter().enumerate() {
                        if u != 0 {
                            m = &m + &self.jet.d_op(j, k).scale(&Scalar::from_int(u));
                        }
                    }
                    m
                }
                _ => self.jet.h_op(&basis.degree, k),
            }),
        }
    }

    /// The representation identity on pairs of part-0 generators.
    pub fn verify(&self, window: &Window) -> VerificationReport {
        let spec = &self.spec;
        let mut rep = VerificationReport::new("top", spec.family.name(), spec.n, Some(window.radius));
        let pts = window.points();
        let fd = self.dim();
        let part0 = |b: &LocalBasis| -> Vec<usize> {
            (0..b.len()).filter(|&i| generator_part(spec, Decomposition::LevelZero, b, i) == Part::Zero).collect()
        };
        for r in &pts {
            let br = spec.local_basis(r).expect("arity checked by window");
            for s in &pts {
                let bs = spec.local_basis(s).expect("arity");
                let q = r.add(s);
                let bq = spec.local_basis(&q).expect("arity");
                let table: PairTable<Scalar> = match pair_table_with(spec, &br, &bs, &bq, false) {
                    Ok(t) => t,
                    Err(e) => {
                        rep.fail(vec![r.to_string(), s.to_string()], e.to_string());
                        continue;
                    }
                };
                for &i in &part0(&br) {
                    for &j in &part0(&bs) {
                        for k in &pts {
                            let lhs = &(&self.matrix(&br, i, &s.add(k)).unwrap() * &self.matrix(&bs, j, k).unwrap())
                                - &(&self.matrix(&bs, j, &r.add(k)).unwrap() * &self.matrix(&br, i, k).unwrap());
                            let mut rhs = Matrix::zeros(fd, fd);
                            for (l, c) in table.get(i, j) {
                                match self.matrix(&bq, *l as usize, k) {
                                    Ok(m) => rhs = &rhs + &m.scale(c),
                                    Err(e) => rep.fail(vec![r.to_string(), s.to_string()], e.to_string()),
                                }
                            }
                            rep.count("checks", 1);
                            if lhs != rhs {
                                rep.fail(vec![format!("{i}@{r}"), format!("{j}@{s}"), format!("grade {k}")], format!("{:?}", &lhs - &rhs));
                            }
                        }
                    }
                }
            }
        }
        rep.finish()
    }
}

/// `X_{a_1}(r_1) ⋯ X_{a_j}(r_j) · (w_b ⊗ t^k)`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub factors: Vec<(usize, DegreeVector)>,
    pub fiber: usize,
    pub grade: DegreeVector,
}

impl Monomial {
    pub fn total_grade(&self) -> DegreeVector {
        self.factors.iter().fold(self.grade.clone(), |acc, (_, r)| acc.add(r))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, r) in &self.factors {
            write!(f, "x{a}{r}·")?;
        }
        write!(f, "w{}⊗t^{}", self.fiber, self.grade)
    }
}

pub type Vector = BTreeMap<Monomial, Scalar>;

fn add_into(acc: &mut Vector, v: &Vector, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let e = acc.entry(k.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &(x * c);
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

#[derive(Default)]
struct Ctx {
    bases: HashMap<DegreeVector, Arc<LocalBasis>>,
    tables: HashMap<(DegreeVector, DegreeVector), Arc<PairTable<Scalar>>>,
    memo: HashMap<(DegreeVector, usize, Monomial), Arc<Vector>>,
}

/// `M(W)` spanned, at each depth `d` and total grade `q` in the window, by
/// monomials of total root height `d` whose degrees lie in the window.
pub struct InducedModule {
    pub top: Top,
    pub depth: usize,
    pub window: Window,
    basis: BTreeMap<(usize, DegreeVector), Vec<Monomial>>,
    ctx: RefCell<Ctx>,
}

fn height(g: &SimpleLieDatum, a: usize) -> Option<usize> {
    g.root_of(a).map(|r| r.coords.iter().map(|c| c.unsigned_abs() as usize).sum())
}

pub fn induced_module(top: Top, dec: Decomposition, depth: usize, window: &Window) -> Result<InducedModule> {
    if dec != Decomposition::LevelZero {
        return Err(Error::Capability(format!("induction is implemented for the level-zero decomposition, not {dec}")));
    }
    if depth < 1 {
        return Err(Error::Precondition("induction depth must be at least 1".into()));
    }
    if window.arity != top.spec.n {
        return Err(Error::ArityMismatch(window.arity, top.spec.n));
    }
    let check = top.verify(&Window::new(1, top.spec.n));
    if !check.passed() {
        return Err(Error::Precondition(format!("top is not a part-0 module: {check}")));
    }
    let g = top.spec.g.clone().expect("tauH carries g");
    let negatives: Vec<(usize, usize)> =
        g.roots.iter().filter(|r| !r.is_positive()).map(|r| (r.vector, height(&g, r.vector).unwrap())).collect();
    let pts = window.points();
    // sorted sequences of (root vector, degree) with total height <= depth
    let letters: Vec<(usize, DegreeVector, usize)> =
        negatives.iter().flat_map(|&(a, h)| pts.iter().map(move |r| (a, r.clone(), h))).collect();
    let mut all: Vec<(Vec<(usize, DegreeVector)>, usize)> = vec![(Vec::new(), 0)];
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (word, d) in &frontier {
            for (a, r, h) in &letters {
                if d + h > depth {
                    continue;
                }
                if let Some(last) = word.last() {
                    if (a, r) < (&last.0, &last.1) {
                        continue;
                    }
                }
                let mut w = word.clone();
                w.push((*a, r.clone()));
                next.push((w, d + h));
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    let mut basis: BTreeMap<(usize, DegreeVector), Vec<Monomial>> = BTreeMap::new();
    for q in &pts {
        for (word, d) in &all {
            let lowered = word.iter().fold(DegreeVector::zero(q.arity()), |acc, (_, r)| acc.add(r));
            let k = q.sub(&lowered);
            for b in 0..top.dim() {
                basis.entry((*d, q.clone())).or_default().push(Monomial { factors: word.clone(), fiber: b, grade: k.clone() });
            }
        }
    }
    Ok(InducedModule { top, depth, window: *window, basis, ctx: RefCell::new(Ctx::default()) })
}

impl InducedModule {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.top.spec
    }

    fn datum(&self) -> &SimpleLieDatum {
        self.top.spec.g.as_deref().expect("tauH carries g")
    }

    pub fn graded_dims(&self) -> BTreeMap<(usize, DegreeVector), usize> {
        self.basis.iter().map(|(k, v)| (k.clone(), v.len())).collect()
    }

    pub fn basis(&self, depth: usize, q: &DegreeVector) -> &[Monomial] {
        self.basis.get(&(depth, q.clone())).map_or(&[], |v| v.as_slice())
    }

    pub fn manifest(&self) -> Value {
        let dims: BTreeMap<String, usize> =
            self.graded_dims().into_iter().map(|((d, q), n)| (format!("depth {d} grade {q}"), n)).collect();
        json!({
            "kind": "induced",
            "parameters": {"highest_weight": self.top.highest, "jet": self.top.jet.label(), "depth": self.depth},
            "window": self.window.radius,
            "graded-dims": dims,
        })
    }

    fn local(&self, r: &DegreeVector) -> Arc<LocalBasis> {
        let mut ctx = self.ctx.borrow_mut();
        if let Some(b) = ctx.bases.get(r) {
            return b.clone();
        }
        let b = Arc::new(self.top.spec.local_basis(r).expect("arity"));
        ctx.bases.insert(r.clone(), b.clone());
        b
    }

    fn table(&self, s: &DegreeVector, r: &DegreeVector) -> Result<Arc<PairTable<Scalar>>> {
        let key = (s.clone(), r.clone());
        if let Some(t) = self.ctx.borrow().tables.get(&key) {
            return Ok(t.clone());
        }
        let (bs, br, bq) = (self.local(s), self.local(r), self.local(&s.add(r)));
        let t = Arc::new(pair_table_with::<Scalar>(&self.top.spec, &bs, &br, &bq, false)?);
        self.ctx.borrow_mut().tables.insert(key, t.clone());
        Ok(t)
    }

    /// Generator `i` of the local basis at `s` applied to one monomial.
    fn apply_monomial(&self, s: &DegreeVector, i: usize, mono: &Monomial) -> Result<Arc<Vector>> {
        let key = (s.clone(), i, mono.clone());
        if let Some(v) = self.ctx.borrow().memo.get(&key) {
            return Ok(v.clone());
        }
        let bs = self.local(s);
        let part = generator_part(&self.top.spec, Decomposition::LevelZero, &bs, i);
        let mut out = Vector::new();
        let negative = match bs.gens[i].kind {
            GenKind::X(a) if part == Part::Minus => Some(a),
            _ => None,
        };
        if let Some(a) = negative {
            if mono.factors.first().map_or(true, |f| (a, s) <= (f.0, &f.1)) {
                let mut m = mono.clone();
                m.factors.insert(0, (a, s.clone()));
                out.insert(m, Scalar::one());
                let v = Arc::new(out);
                self.ctx.borrow_mut().memo.insert(key, v.clone());
                return Ok(v);
            }
        }
        if mono.factors.is_empty() {
            if part == Part::Zero {
                let m = self.top.matrix(&bs, i, &mono.grade)?;
                let target = mono.grade.add(s);
                for b in 0..m.rows() {
                    let c = m.get(b, mono.fiber);
                    if !c.is_zero() {
                        out.insert(Monomial { factors: Vec::new(), fiber: b, grade: target.clone() }, c.clone());
                    }
                }
            }
        } else {
            // y X_1 rest = X_1 (y rest) + [y, X_1] rest
            let (a1, r1) = mono.factors[0].clone();
            let rest = Monomial { factors: mono.factors[1..].to_vec(), fiber: mono.fiber, grade: mono.grade.clone() };
            let inner = self.apply_monomial(s, i, &rest)?;
            for (m, c) in inner.iter() {
                let v = self.apply_monomial(&r1, a1, m)?;
                add_into(&mut out, &v, c);
            }
            let table = self.table(s, &r1)?;
            let q = s.add(&r1);
            for (l, c) in table.get(i, a1) {
                let v = self.apply_monomial(&q, *l as usize, &rest)?;
                add_into(&mut out, &v, c);
            }
        }
        let v = Arc::new(out);
        self.ctx.borrow_mut().memo.insert(key, v.clone());
        Ok(v)
    }

    /// Generator `i` of the local basis at `s` applied to a vector.
    pub fn act(&self, s: &DegreeVector, i: usize, v: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (m, c) in v {
            let w = self.apply_monomial(s, i, m)?;
            add_into(&mut out, &w, c);
        }
        Ok(out)
    }

    /// Positive generators `X_α(s)` (`α > 0`, `s` in the window) with heights.
    fn raising(&self) -> Vec<(DegreeVector, usize, usize)> {
        let g = self.datum();
        let mut out = Vec::new();
        for s in self.window.iter() {
            for r in g.roots.iter().filter(|r| r.is_positive()) {
                out.push((s.clone(), r.vector, height(g, r.vector).unwrap()));
            }
        }
        out
    }

    /// Vectors at `(depth, q)` killed by every windowed raising generator,
    /// as coordinates against [`InducedModule::basis`].
    pub fn highest_weight_space(&self, depth: usize, q: &DegreeVector) -> Result<Vec<Vec<Scalar>>> {
        let basis = self.basis(depth, q).to_vec();
        let mut rows: BTreeMap<(DegreeVector, usize, Monomial), Vec<Scalar>> = BTreeMap::new();
        for (col, m) in basis.iter().enumerate() {
            for (s, a, _) in self.raising() {
                let v = self.apply_monomial(&s, a, m)?;
                for (k, c) in v.iter() {
                    rows.entry((s.clone(), a, k.clone())).or_insert_with(|| vec![Scalar::zero(); basis.len()])[col] = c.clone();
                }
            }
        }
        if rows.is_empty() {
            return Ok((0..basis.len()).map(|i| unit(basis.len(), i)).collect());
        }
        Ok(nullspace(&Matrix::from_rows(rows.into_values().collect())))
    }

    /// Coordinates of `Φ_d(m)`: every windowed raising sequence of total
    /// height `d`, read on the top.
    fn top_readout(&self, m: &Monomial, d: usize, out: &mut BTreeMap<(Vec<(DegreeVector, usize)>, Monomial), Scalar>) -> Result<()> {
        let mut stack: Vec<(Vec<(DegreeVector, usize)>, usize, Vector)> = vec![(Vec::new(), d, BTreeMap::from([(m.clone(), Scalar::one())]))];
        let raising = self.raising();
        while let Some((seq, left, v)) = stack.pop() {
            if v.is_empty() {
                continue;
            }
            if left == 0 {
                for (k, c) in v {
                    if k.factors.is_empty() {
                        out.insert((seq.clone(), k), c);
                    }
                }
                continue;
            }
            for (s, a, h) in &raising {
                if *h > left {
                    continue;
                }
                let w = self.act(s, *a, &v)?;
                let mut seq2 = seq.clone();
                seq2.push((s.clone(), *a));
                stack.push((seq2, left - h, w));
            }
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// `M` modulo the vectors that no windowed raising sequence brings back to
/// the top.
#[derive(Clone, Debug)]
pub struct WindowQuotient {
    pub label: String,
    pub dims: BTreeMap<(usize, DegreeVector), usize>,
    /// radical basis per `(depth, grade)` in the coordinates of the induced basis
    pub radical: BTreeMap<(usize, DegreeVector), Vec<Vec<Scalar>>>,
}

impl WindowQuotient {
    pub fn dim(&self, depth: usize, q: &DegreeVector) -> usize {
        self.dims.get(&(depth, q.clone())).copied().unwrap_or(0)
    }
}

pub fn simple_quotient_window(module: &InducedModule) -> Result<WindowQuotient> {
    let mut dims = BTreeMap::new();
    let mut radical = BTreeMap::new();
    for ((d, q), basis) in &module.basis {
        let mut columns: Vec<BTreeMap<(Vec<(DegreeVector, usize)>, Monomial), Scalar>> = Vec::new();
        for m in basis {
            let mut read = BTreeMap::new();
            module.top_readout(m, *d, &mut read)?;
            columns.push(read);
        }
        let keys: BTreeSet<_> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
        let kernel = if keys.is_empty() {
            (0..basis.len()).map(|i| unit(basis.len(), i)).collect()
        } else {
            let rows: Vec<Vec<Scalar>> = keys
                .iter()
                .map(|k| columns.iter().map(|c| c.get(k).cloned().unwrap_or_else(Scalar::zero)).collect())
                .collect();
            nullspace(&Matrix::from_rows(rows))
        };
        dims.insert((*d, q.clone()), basis.len() - kernel.len());
        radical.insert((*d, q.clone()), kernel);
    }
    Ok(WindowQuotient { label: "window-approximate simple quotient".into(), dims, radical })
}
