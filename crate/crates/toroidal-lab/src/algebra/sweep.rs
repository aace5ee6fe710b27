//! Window sweeps: antisymmetry and closure of the bracket on generator pairs,
//! and the Jacobi identity on generator triples.
//!
//! For `N <= 4` the triple sweep can be reduced by signed permutations `B`
//! of `Z^N`. Such a `B` is orthogonal, so `X(r) -> X(Br)`, `K(u,r) -> K(Bu,Br)`,
//! `D(u,r) -> D(Bu,Br)` is an automorphism of the full toroidal algebra; it
//! induces one on a family exactly when it carries the family's central
//! kernel and derivation space at `q` onto those at `Bq`. That condition is
//! checked on every degree the sweep touches, and the Jacobi residual is then
//! evaluated on one ordered representative per orbit of degree triples.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use super::coeff::{take_overflow, Coeff, Q};
use super::element::AlgebraElement;
use super::tensor::{pair_table_with, PairTable};
use super::{AlgebraSpec, LocalBasis, Slot};
use crate::degree::{DegreeVector, Window};
use crate::report::{Status, VerificationReport};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct SweepOptions {
    /// reduce triple sweeps by signed-permutation symmetries
    pub symmetry: bool,
    /// stop and report `inconclusive` once exceeded
    pub budget: Option<Duration>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { symmetry: true, budget: None }
    }
}

/// Memoized local bases.
pub(crate) struct BasisCache<'a> {
    spec: &'a AlgebraSpec,
    map: HashMap<DegreeVector, Arc<LocalBasis>>,
}

impl<'a> BasisCache<'a> {
    pub(crate) fn new(spec: &'a AlgebraSpec) -> BasisCache<'a> {
        BasisCache { spec, map: HashMap::new() }
    }

    pub(crate) fn get(&mut self, q: &DegreeVector) -> Arc<LocalBasis> {
        if let Some(b) = self.map.get(q) {
            return b.clone();
        }
        let b = Arc::new(self.spec.local_basis(q).expect("degree of the right arity"));
        self.map.insert(q.clone(), b.clone());
        b
    }
}

pub(crate) fn render_generator(spec: &AlgebraSpec, basis: &LocalBasis, i: usize) -> String {
    let mut c = vec![Scalar::from_int(0); basis.len()];
    c[i] = Scalar::from_int(1);
    AlgebraElement::from_coords(&basis.degree, &c).render(spec)
}

pub(crate) fn render_coords<T: Coeff>(spec: &AlgebraSpec, q: &DegreeVector, coords: &[T]) -> String {
    let c: Vec<Scalar> = coords.iter().map(|x| x.to_scalar()).collect();
    AlgebraElement::from_coords(q, &c).render(spec)
}

/// Checks `[x,y] = -[y,x]` and that every bracket of generators stays in the
/// family, for all generator pairs with degrees in the window.
pub fn verify_antisymmetry(spec: &AlgebraSpec, window: &Window) -> VerificationReport {
    let mut rep = VerificationReport::new("antisymmetry", spec.family.name(), spec.n, Some(window.radius));
    let mut cache = BasisCache::new(spec);
    let pts = window.points();
    for (a, r) in pts.iter().enumerate() {
        for s in &pts[a..] {
            pair_checks(spec, &mut cache, r, s, &mut rep);
        }
    }
    rep.finish()
}

fn pair_checks(spec: &AlgebraSpec, cache: &mut BasisCache, r: &DegreeVector, s: &DegreeVector, rep: &mut VerificationReport) {
    let br = cache.get(r);
    let bs = cache.get(s);
    let q = r.add(s);
    let bq = cache.get(&q);
    let t1 = pair_table_with::<Scalar>(spec, &br, &bs, &bq, true);
    let t2 = pair_table_with::<Scalar>(spec, &bs, &br, &bq, true);
    rep.count("degree_pairs", 1);
    let (t1, t2) = match (t1, t2) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            rep.fail(vec![r.to_string(), s.to_string()], e.to_string());
            return;
        }
    };
    for i in 0..br.len() {
        for j in 0..bs.len() {
            let mut acc = vec![Scalar::from_int(0); bq.len()];
            for (l, c) in t1.get(i, j) {
                acc[*l as usize] += c;
            }
            for (l, c) in t2.get(j, i) {
                acc[*l as usize] += c;
            }
            if acc.iter().any(|x| !num::Zero::is_zero(x)) {
                rep.fail(
                    vec![render_generator(spec, &br, i), render_generator(spec, &bs, j)],
                    render_coords(spec, &q, &acc),
                );
            }
        }
    }
}

/// A signed permutation: `(Bx)_{perm[j]} = sign[j] * x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub sign: Vec<i64>,
}

impl SignedPerm {
    pub fn apply(&self, r: &DegreeVector) -> DegreeVector {
        let mut out = DegreeVector::zero(r.arity());
        for (j, &c) in r.coords().iter().enumerate() {
            out.0[self.perm[j]] = self.sign[j] * c;
        }
        out
    }

    fn all(n: usize) -> Vec<SignedPerm> {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for v in 0..n {
                    if !p.contains(&v) {
                        let mut q = p.clone();
                        q.push(v);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        let mut out = Vec::new();
        for p in perms {
            for mask in 0..(1u32 << n) {
                let sign = (0..n).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
                out.push(SignedPerm { perm: p.clone(), sign });
            }
        }
        out
    }
}

fn slot_carried(b: &SignedPerm, from: &Slot, to: &Slot) -> bool {
    match (from, to) {
        (Slot::Zero, Slot::Zero) | (Slot::Full, Slot::Full) | (Slot::Local { .. }, Slot::Local { .. }) => true,
        (Slot::Line { w, .. }, Slot::Line { w: w2, .. }) => {
            let bw = b.apply(w);
            bw == *w2 || bw == w2.neg()
        }
        _ => false,
    }
}

/// Signed permutations inducing automorphisms of the family on all degrees
/// of `test`.
pub fn symmetry_group(spec: &AlgebraSpec, test: &Window) -> Vec<SignedPerm> {
    let mut cache = BasisCache::new(spec);
    let pts = test.points();
    let bases: Vec<Arc<LocalBasis>> = pts.iter().map(|q| cache.get(q)).collect();
    let mut group = Vec::new();
    'outer: for b in SignedPerm::all(spec.n) {
        for (q, bq) in pts.iter().zip(&bases) {
            let img = cache.get(&b.apply(q));
            if !slot_carried(&b, &bq.k, &img.k) || !slot_carried(&b, &bq.d, &img.d) {
                continue 'outer;
            }
        }
        group.push(b);
    }
    group
}

struct Residual<T> {
    ijk: (usize, usize, usize),
    value: Vec<T>,
}

/// All nonzero Jacobi residuals for generators at degrees `(r, s, t)`.
#[allow(clippy::too_many_arguments)]
fn jacobi_residuals<T: Coeff>(
    spec: &AlgebraSpec,
    b: [&LocalBasis; 3],
    sums: [&LocalBasis; 3],
    total: &LocalBasis,
    p_rs: &PairTable<T>,
) -> Vec<Residual<T>> {
    let [br, bs, bt] = b;
    let [b_st, b_tr, b_rs] = sums;
    let p_st = pair_table_with::<T>(spec, bs, bt, b_st, false).expect("unchecked tables");
    let p_tr = pair_table_with::<T>(spec, bt, br, b_tr, false).expect("unchecked tables");
    let p_r_st = pair_table_with::<T>(spec, br, b_st, total, false).expect("unchecked tables");
    let p_s_tr = pair_table_with::<T>(spec, bs, b_tr, total, false).expect("unchecked tables");
    let p_t_rs = pair_table_with::<T>(spec, bt, b_rs, total, false).expect("unchecked tables");
    let (nr, ns, nt, nq) = (br.len(), bs.len(), bt.len(), total.len());
    let mut res: Vec<T> = vec![T::zero(); nr * ns * nt * nq];
    let idx = |i: usize, j: usize, k: usize, m: usize| ((i * ns + j) * nt + k) * nq + m;
    // [x_i, [y_j, z_k]]
    for j in 0..ns {
        for k in 0..nt {
            for (l, c) in p_st.get(j, k) {
                for i in 0..nr {
                    for (m, c2) in p_r_st.get(i, *l as usize) {
                        res[idx(i, j, k, *m as usize)].add_mul(c, c2);
                    }
                }
            }
        }
    }
    // [y_j, [z_k, x_i]]
    for k in 0..nt {
        for i in 0..nr {
            for (l, c) in p_tr.get(k, i) {
                for j in 0..ns {
                    for (m, c2) in p_s_tr.get(j, *l as usize) {
                        res[idx(i, j, k, *m as usize)].add_mul(c, c2);
                    }
                }
            }
        }
    }
    // [z_k, [x_i, y_j]]
    for i in 0..nr {
        for j in 0..ns {
            for (l, c) in p_rs.get(i, j) {
                for k in 0..nt {
                    for (m, c2) in p_t_rs.get(k, *l as usize) {
                        res[idx(i, j, k, *m as usize)].add_mul(c, c2);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..nr {
        for j in 0..ns {
            for k in 0..nt {
                let v = &res[idx(i, j, k, 0)..idx(i, j, k, 0) + nq];
                if v.iter().any(|x| !x.is_zero()) {
                    out.push(Residual { ijk: (i, j, k), value: v.to_vec() });
                }
            }
        }
    }
    out
}

/// Orbit bookkeeping for the reduced triple enumeration.
struct Orbits {
    /// canonical index of the orbit of each window point
    orbit: Vec<usize>,
    /// image of each point under each group element
    image: Vec<Vec<usize>>,
}

impl Orbits {
    fn new(window: &Window, group: &[SignedPerm]) -> Orbits {
        let pts = window.points();
        let image: Vec<Vec<usize>> = group
            .iter()
            .map(|b| pts.iter().map(|p| window.index_of(&b.apply(p)).expect("window is symmetric")).collect())
            .collect();
        let orbit = (0..pts.len()).map(|i| image.iter().map(|im| im[i]).min().unwrap_or(i)).collect();
        Orbits { orbit, image }
    }

    fn stabilizer(&self, r: usize) -> Vec<usize> {
        (0..self.image.len()).filter(|&g| self.image[g][r] == r).collect()
    }

    fn is_min_under(&self, s: usize, stab: &[usize]) -> bool {
        stab.iter().all(|&g| self.image[g][s] >= s)
    }
}

pub fn verify_jacobi(spec: &AlgebraSpec, window: &Window) -> VerificationReport {
    verify_jacobi_with(spec, window, &SweepOptions::default())
}

pub fn verify_jacobi_with(spec: &AlgebraSpec, window: &Window, opts: &SweepOptions) -> VerificationReport {
    let start = Instant::now();
    let mut rep = verify_antisymmetry(spec, window);
    rep.check = "jacobi".into();
    let n = spec.n;
    let group = if opts.symmetry && n <= 4 {
        symmetry_group(spec, &Window::new(3 * window.radius, n))
    } else {
        vec![SignedPerm { perm: (0..n).collect(), sign: vec![1; n] }]
    };
    if group.len() > 1 {
        rep.note(format!(
            "triples reduced by a group of {} signed-permutation automorphisms; subspace stability checked on the radius {} window",
            group.len(),
            3 * window.radius
        ));
    }
    rep.count("symmetry_group", group.len() as u64);
    let orbits = Orbits::new(window, &group);
    let pts = window.points();
    let mut cache = BasisCache::new(spec);
    let len = pts.len();
    let mut examined: u64 = 0;
    'sweep: for r in 0..len {
        if orbits.orbit[r] != r {
            continue;
        }
        let stab = orbits.stabilizer(r);
        let br = cache.get(&pts[r]);
        for s in 0..len {
            if orbits.orbit[s] < r || !orbits.is_min_under(s, &stab) {
                continue;
            }
            if let Some(budget) = opts.budget {
                if start.elapsed() > budget {
                    rep.downgrade(Status::Inconclusive);
                    rep.note(format!("time budget exhausted after {examined} degree triples"));
                    break 'sweep;
                }
            }
            let os = orbits.orbit[s];
            let bs = cache.get(&pts[s]);
            let rs = pts[r].add(&pts[s]);
            let b_rs = cache.get(&rs);
            take_overflow();
            let p_rs_q = pair_table_with::<Q>(spec, &br, &bs, &b_rs, false).expect("unchecked tables");
            let p_rs_exact = if take_overflow() {
                Some(pair_table_with::<Scalar>(spec, &br, &bs, &b_rs, false).expect("unchecked tables"))
            } else {
                None
            };
            for t in 0..len {
                if orbits.orbit[t] < os {
                    continue;
                }
                examined += 1;
                let bt = cache.get(&pts[t]);
                let b_st = cache.get(&pts[s].add(&pts[t]));
                let b_tr = cache.get(&pts[t].add(&pts[r]));
                let total = cache.get(&rs.add(&pts[t]));
                let bases = [&*br, &*bs, &*bt];
                let sums = [&*b_st, &*b_tr, &*b_rs];
                let failures: Vec<(usize, usize, usize, String)> = {
                    let fast = if p_rs_exact.is_none() {
                        take_overflow();
                        let v = jacobi_residuals::<Q>(spec, bases, sums, &total, &p_rs_q);
                        if take_overflow() {
                            None
                        } else {
                            Some(v.into_iter().map(|x| (x.ijk, x.value.iter().map(|c| c.to_scalar()).collect())).collect())
                        }
                    } else {
                        None
                    };
                    let exact: Vec<((usize, usize, usize), Vec<Scalar>)> = match fast {
                        Some(v) => v,
                        None => {
                            rep.count("exact_fallbacks", 1);
                            let p = match &p_rs_exact {
                                Some(p) => p.clone(),
                                None => pair_table_with::<Scalar>(spec, &br, &bs, &b_rs, false).expect("unchecked tables"),
                            };
                            jacobi_residuals::<Scalar>(spec, bases, sums, &total, &p)
                                .into_iter()
                                .map(|x| (x.ijk, x.value))
                                .collect()
                        }
                    };
                    exact
                        .into_iter()
                        .map(|((i, j, k), v)| (i, j, k, render_coords(spec, &total.degree, &v)))
                        .collect()
                };
                rep.count("generator_triples", (br.len() * bs.len() * bt.len()) as u64);
                for (i, j, k, residual) in failures {
                    rep.fail(
                        vec![
                            render_generator(spec, &br, i),
                            render_generator(spec, &bs, j),
                            render_generator(spec, &bt, k),
                        ],
                        residual,
                    );
                }
            }
        }
    }
    rep.count("degree_triples", examined);
    rep.timing_ms = Some(start.elapsed().as_millis() as u64);
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Family;
    use crate::simple_lie::build_sl;

    #[test]
    fn small_windows_pass() {
        let g = build_sl(2).unwrap();
        for (fam, n) in [(Family::Toroidal, 2), (Family::TauH, 2), (Family::TauD, 3), (Family::FullToroidal, 2)] {
            let spec = AlgebraSpec::new(fam, n, Some(g.clone())).unwrap();
            let rep = verify_jacobi(&spec, &Window::new(1, n));
            assert!(rep.passed(), "{rep}");
        }
        let dera = AlgebraSpec::new(Family::DerA, 2, None).unwrap();
        assert!(verify_jacobi(&dera, &Window::new(1, 2)).passed());
    }

    #[test]
    fn reduced_and_full_sweeps_agree() {
        let g = build_sl(2).unwrap();
        let spec = AlgebraSpec::new(Family::TauH, 4, Some(g)).unwrap();
        let w = Window::new(1, 4);
        let reduced = verify_jacobi(&spec, &w);
        let full = verify_jacobi_with(&spec, &w, &SweepOptions { symmetry: false, budget: None });
        assert!(reduced.passed() && full.passed());
        assert!(reduced.stats["degree_triples"] < full.stats["degree_triples"]);
        assert!(reduced.stats["symmetry_group"] > 1);
    }

    #[test]
    fn symmetry_group_sizes() {
        let h4 = AlgebraSpec::new(Family::HN, 4, None).unwrap();
        assert_eq!(symmetry_group(&h4, &Window::new(2, 4)).len(), 64);
        let dera = AlgebraSpec::new(Family::DerA, 2, None).unwrap();
        assert_eq!(symmetry_group(&dera, &Window::new(1, 2)).len(), 8);
    }
}
