//! Jet modules `V_N ⊗ A` over `H̃_N ⋉ A`: `d_i` scales by `s_i + u_i`, `t^r`
//! shifts the grading, and `h_r` acts at grade `s` by
//! `(bar r, s) + L_w(r)` plus a quadratic element `sigma(r)` of `sp_{2m}`
//! acting on the fiber.
//!
//! `sigma` is a weighted sum of six summand families; the weights form a
//! [`Profile`]. The module axioms reduce to
//! `[sigma(r), sigma(s)] = (bar r, s)(sigma(r+s) - sigma(r) - sigma(s))`,
//! which fixes the profile only up to the choices that give the same action.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::traits::{One, Zero};

use super::sp::{Fiber, SpRep};
use crate::degree::{bar_unchecked, DegreeVector, RationalVector, Window};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// Multipliers on the six summand families of `sigma`, in order:
/// `r_{m+i}^2 E_{m+i,i}`, `r_i r_{m+i}(E_ii - E_{m+i,m+i})`, `r_i^2 E_{i,m+i}`,
/// `r_{m+i} r_{m+j}(E_{m+j,i} + E_{m+i,j})`, `r_i r_{m+j}(E_ij - E_{m+j,m+i})`,
/// `-r_i r_j(E_{i,m+j} + E_{j,m+i})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub [Scalar; 6]);

impl Profile {
    /// All multipliers one: the formula as printed.
    pub fn literal() -> Profile {
        Profile(std::array::from_fn(|_| Scalar::one()))
    }

    pub fn from_ratios(p: [(i64, i64); 6]) -> Profile {
        Profile(p.map(|(n, d)| Scalar::new(n, d)))
    }

    pub fn scale(&self, k: &Scalar) -> Profile {
        Profile(std::array::from_fn(|i| &self.0[i] * k))
    }

    /// L1 distance to another profile.
    pub fn distance(&self, other: &Profile) -> Scalar {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).sum()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The six summand families at `r`, unweighted.
pub fn sigma_summands(m: usize, r: &DegreeVector) -> [Matrix; 6] {
    let n = 2 * m;
    let c = |i: usize| Scalar::from_int(r.coords()[i]);
    let unit = |i: usize, j: usize| Matrix::unit(n, i, j);
    let mut out: [Matrix; 6] = std::array::from_fn(|_| Matrix::zeros(n, n));
    for i in 0..m {
        let (ri, rmi) = (c(i), c(m + i));
        out[0] = &out[0] + &unit(m + i, i).scale(&(&rmi * &rmi));
        out[1] = &out[1] + &(&unit(i, i) - &unit(m + i, m + i)).scale(&(&ri * &rmi));
        out[2] = &out[2] + &unit(i, m + i).scale(&(&ri * &ri));
        for j in 0..m {
            let (rj, rmj) = (c(j), c(m + j));
            out[3] = &out[3] + &(&unit(m + j, i) + &unit(m + i, j)).scale(&(&rmi * &rmj));
            out[4] = &out[4] + &(&unit(i, j) - &unit(m + j, m + i)).scale(&(&ri * &rmj));
            out[5] = &out[5] - &(&unit(i, m + j) + &unit(j, m + i)).scale(&(&ri * &rj));
        }
    }
    out
}

/// `sigma(r)` under a profile.
pub fn sigma(m: usize, r: &DegreeVector, profile: &Profile) -> Matrix {
    let parts = sigma_summands(m, r);
    let mut out = Matrix::zeros(2 * m, 2 * m);
    for (p, s) in profile.0.iter().zip(parts.iter()) {
        if !p.is_zero() {
            out = &out + &s.scale(p);
        }
    }
    out
}

fn bar_pair(r: &DegreeVector, s: &DegreeVector) -> i64 {
    bar_unchecked(r).dot(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JetOp {
    D(usize),
    H(DegreeVector),
    T(DegreeVector),
}

#[derive(Clone, Debug)]
pub struct JetModule {
    pub m: usize,
    pub fiber: SpRep,
    pub u: RationalVector,
    pub w: RationalVector,
    pub profile: Profile,
}

impl JetModule {
    pub fn new(fiber: SpRep, u: RationalVector, w: RationalVector, profile: Profile) -> Result<JetModule> {
        let n = 2 * fiber.m;
        if u.arity() != n {
            return Err(Error::ArityMismatch(u.arity(), n));
        }
        if w.arity() != n {
            return Err(Error::ArityMismatch(w.arity(), n));
        }
        Ok(JetModule { m: fiber.m, fiber, u, w, profile })
    }

    /// `u = w = 0`.
    pub fn unshifted(fiber: SpRep, profile: Profile) -> JetModule {
        let n = 2 * fiber.m;
        JetModule { m: fiber.m, fiber, u: RationalVector::zero(n), w: RationalVector::zero(n), profile }
    }

    pub fn n(&self) -> usize {
        2 * self.m
    }

    pub fn dim(&self) -> usize {
        self.fiber.dim
    }

    pub fn label(&self) -> String {
        format!("jet[{} p={}]", self.fiber.label(), self.profile)
    }

    /// `sigma(r)` on the fiber.
    pub fn sigma_action(&self, r: &DegreeVector) -> Matrix {
        self.fiber.act(&sigma(self.m, r, &self.profile))
    }

    /// `L_w(r) = sum_i (r_{m+i} w_{m+i} - r_i w_i)`
    pub fn linear_shift(&self, r: &DegreeVector) -> Scalar {
        let m = self.m;
        (0..m)
            .map(|i| {
                Scalar::from_int(r.coords()[m + i]) * &self.w.0[m + i] - Scalar::from_int(r.coords()[i]) * &self.w.0[i]
            })
            .sum()
    }

    fn scalar_part(&self, r: &DegreeVector, k: &DegreeVector) -> Scalar {
        Scalar::from_int(bar_pair(r, k)) + self.linear_shift(r)
    }

    /// `d_i` at grade `k`.
    pub fn d_op(&self, i: usize, k: &DegreeVector) -> Matrix {
        Matrix::identity(self.dim()).scale(&(Scalar::from_int(k.coords()[i]) + &self.u.0[i]))
    }

    /// `h_r` from grade `k` to grade `k + r`.
    pub fn h_op(&self, r: &DegreeVector, k: &DegreeVector) -> Matrix {
        self.h_op_with(&self.sigma_action(r), r, k)
    }

    fn h_op_with(&self, sigma_r: &Matrix, r: &DegreeVector, k: &DegreeVector) -> Matrix {
        &Matrix::identity(self.dim()).scale(&self.scalar_part(r, k)) + sigma_r
    }

    /// `t^r` from grade `k` to grade `k + r`.
    pub fn t_op(&self, _r: &DegreeVector, _k: &DegreeVector) -> Matrix {
        Matrix::identity(self.dim())
    }

    pub fn op(&self, op: &JetOp, k: &DegreeVector) -> (Matrix, DegreeVector) {
        match op {
            JetOp::D(i) => (self.d_op(*i, k), k.clone()),
            JetOp::H(r) => (self.h_op(r, k), k.add(r)),
            JetOp::T(r) => (self.t_op(r, k), k.add(r)),
        }
    }

    /// The action on `v ⊗ t^s`.
    pub fn jet_action(&self, op: &JetOp, v: &[Scalar], s: &DegreeVector) -> (Vec<Scalar>, DegreeVector) {
        let (mat, target) = self.op(op, s);
        (mat.apply(v), target)
    }
}

struct SigmaCache<'a> {
    module: &'a JetModule,
    map: HashMap<DegreeVector, Matrix>,
}

impl<'a> SigmaCache<'a> {
    fn get(&mut self, r: &DegreeVector) -> &Matrix {
        let module = self.module;
        self.map.entry(r.clone()).or_insert_with(|| module.sigma_action(r))
    }
}

fn precondition(rep: &mut VerificationReport, window: &Window, n: usize) -> bool {
    if window.radius < 2 {
        rep.fail(vec![format!("R={}", window.radius)], "window radius must be at least 2".into());
        return false;
    }
    if window.arity != n {
        rep.fail(vec![format!("arity {}", window.arity)], format!("module has N={n}"));
        return false;
    }
    true
}

/// Checks on every window triple `(r, s, k)`:
/// `h_r h_s - h_s h_r = (bar r, s) h_{r+s}`, `t^r t^s = t^{r+s}`,
/// `[d_i, h_r] = r_i h_r` and `[h_r, t^s] = (bar r, s) t^{r+s}`.
pub fn verify_jet_module(module: &JetModule, window: &Window) -> VerificationReport {
    let n = module.n();
    let mut rep = VerificationReport::new("jet", "HN", n, Some(window.radius));
    rep.note(format!("fiber {} profile {}", module.fiber.label(), module.profile));
    if !precondition(&mut rep, window, n) {
        return rep.finish();
    }
    let mut cache = SigmaCache { module, map: HashMap::new() };
    let pts = window.points();
    let dim = module.dim();
    let id = Matrix::identity(dim);
    for r in &pts {
        let sr = cache.get(r).clone();
        for s in &pts {
            let ss = cache.get(s).clone();
            let rs = r.add(s);
            let srs = cache.get(&rs).clone();
            let c = Scalar::from_int(bar_pair(r, s));
            for k in &pts {
                let lhs = &(&module.h_op_with(&sr, r, &s.add(k)) * &module.h_op_with(&ss, s, k))
                    - &(&module.h_op_with(&ss, s, &r.add(k)) * &module.h_op_with(&sr, r, k));
                let res = &lhs - &module.h_op_with(&srs, &rs, k).scale(&c);
                rep.count("hh_checks", 1);
                if !res.is_zero() {
                    rep.fail(vec![format!("h{r}"), format!("h{s}"), format!("grade {k}")], format!("{res:?}"));
                }
                // t^r t^s and t^{r+s} are both the identity between the same grades
                let tt = &(&module.t_op(r, &s.add(k)) * &module.t_op(s, k)) - &module.t_op(&rs, k);
                rep.count("tt_checks", 1);
                if !tt.is_zero() {
                    rep.fail(vec![format!("t{r}"), format!("t{s}"), format!("grade {k}")], format!("{tt:?}"));
                }
                let ht = &(&module.h_op_with(&sr, r, &s.add(k)) * &module.t_op(s, k))
                    - &(&module.t_op(s, &r.add(k)) * &module.h_op_with(&sr, r, k));
                let res = &ht - &id.scale(&c);
                rep.count("ht_checks", 1);
                if !res.is_zero() {
                    rep.fail(vec![format!("h{r}"), format!("t{s}"), format!("grade {k}")], format!("{res:?}"));
                }
            }
        }
        for k in &pts {
            let h = module.h_op_with(&sr, r, k);
            for i in 0..n {
                let lhs = &(&module.d_op(i, &r.add(k)) * &h) - &(&h * &module.d_op(i, k));
                let res = &lhs - &h.scale(&Scalar::from_int(r.coords()[i]));
                rep.count("dh_checks", 1);
                if !res.is_zero() {
                    rep.fail(vec![format!("d{}", i + 1), format!("h{r}"), format!("grade {k}")], format!("{res:?}"));
                }
            }
        }
    }
    rep.finish()
}

fn sp_residual(cache: &mut SigmaCache<'_>, r: &DegreeVector, s: &DegreeVector) -> Matrix {
    let sr = cache.get(r).clone();
    let ss = cache.get(s).clone();
    let srs = cache.get(&r.add(s)).clone();
    let rhs = (&(&srs - &sr) - &ss).scale(&Scalar::from_int(bar_pair(r, s)));
    &sr.commutator(&ss) - &rhs
}

/// `[sigma(r), sigma(s)] = (bar r, s)(sigma(r+s) - sigma(r) - sigma(s))` on
/// the fiber, for all window pairs.
pub fn verify_sp_identity(module: &JetModule, window: &Window) -> VerificationReport {
    let n = module.n();
    let mut rep = VerificationReport::new("sp-identity", "HN", n, Some(window.radius));
    if window.arity != n {
        rep.fail(vec![format!("arity {}", window.arity)], format!("module has N={n}"));
        return rep.finish();
    }
    let mut cache = SigmaCache { module, map: HashMap::new() };
    let pts = window.points();
    for r in &pts {
        for s in &pts {
            let res = sp_residual(&mut cache, r, s);
            rep.count("pairs", 1);
            if !res.is_zero() {
                rep.fail(vec![format!("sigma{r}"), format!("sigma{s}")], format!("{res:?}"));
            }
        }
    }
    rep.finish()
}

#[derive(Clone, Debug)]
pub struct Calibration {
    pub profile: Profile,
    /// profiles in the search set passing every check
    pub passing: usize,
    /// distinct fiber actions among the passing profiles
    pub distinct_actions: usize,
    pub searched: usize,
    pub report: VerificationReport,
}

/// The multiplier set searched per summand family.
pub fn search_values() -> Vec<Scalar> {
    [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1)].iter().map(|&(n, d)| Scalar::new(n, d)).collect()
}

fn all_profiles() -> Vec<Profile> {
    let vals = search_values();
    let k = vals.len();
    (0..k.pow(6))
        .map(|mut idx| {
            Profile(std::array::from_fn(|_| {
                let v = vals[idx % k].clone();
                idx /= k;
                v
            }))
        })
        .collect()
}

fn frobenius_residual(m: &Matrix) -> Scalar {
    m.entries().iter().map(|c| c.abs()).sum()
}

/// Searches profiles over `{±1, ±1/2, ±2}^6` for a jet module on `fiber`
/// passing [`verify_jet_module`] on `window` (with `u = w = 0`). Among the
/// passing profiles the one nearest the literal profile in L1 is returned,
/// ties broken by the profile order.
pub fn calibrate_jet_coefficients(m: usize, fiber: &SpRep, window: &Window) -> Result<Calibration> {
    if fiber.m != m {
        return Err(Error::Precondition(format!("fiber is for sp_{}, asked for m={m}", 2 * fiber.m)));
    }
    if window.radius < 2 {
        return Err(Error::Precondition("calibration needs window radius at least 2".into()));
    }
    let n = 2 * m;
    if window.arity != n {
        return Err(Error::ArityMismatch(window.arity, n));
    }
    // sigma is linear in the profile, so the fiber images of the six summands
    // at each degree determine everything
    let pts: Vec<DegreeVector> = {
        let big = Window::new(2 * window.radius, n);
        big.points()
    };
    let summands: HashMap<DegreeVector, [Matrix; 6]> = pts
        .iter()
        .map(|r| {
            let s = sigma_summands(m, r);
            (r.clone(), std::array::from_fn(|i| fiber.act(&s[i])))
        })
        .collect();
    let eval = |p: &Profile, r: &DegreeVector| -> Matrix {
        let parts = &summands[r];
        let mut out = Matrix::zeros(fiber.dim, fiber.dim);
        for (c, s) in p.0.iter().zip(parts.iter()) {
            out = &out + &s.scale(c);
        }
        out
    };
    let unit = |i: usize| DegreeVector::unit(n, i);
    let mut probes: Vec<(DegreeVector, DegreeVector)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            probes.push((unit(i), unit(j)));
            probes.push((unit(i).add(&unit(j)), unit(j)));
        }
    }
    let ones = DegreeVector::new(&vec![1; n]);
    probes.push((ones.clone(), ones.scale(2).neg()));
    // quadratic maps are fixed by their values on e_i and e_i + e_j
    let mut key_points: Vec<DegreeVector> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            key_points.push(unit(i).add(&unit(j)));
        }
    }
    let profiles = all_profiles();
    let searched = profiles.len();
    let mut best: Option<(Scalar, Profile)> = None;
    let mut groups: BTreeMap<Vec<Scalar>, Vec<Profile>> = BTreeMap::new();
    for p in profiles {
        let mut residual = Scalar::zero();
        for (r, s) in &probes {
            let (sr, ss, srs) = (eval(&p, r), eval(&p, s), eval(&p, &r.add(s)));
            let rhs = (&(&srs - &sr) - &ss).scale(&Scalar::from_int(bar_pair(r, s)));
            residual = residual + frobenius_residual(&(&sr.commutator(&ss) - &rhs));
            if !residual.is_zero() {
                break;
            }
        }
        if !residual.is_zero() {
            if best.as_ref().map_or(true, |(b, _)| residual < *b) {
                best = Some((residual, p));
            }
            continue;
        }
        let key: Vec<Scalar> = key_points.iter().flat_map(|r| eval(&p, r).entries().to_vec()).collect();
        groups.entry(key).or_default().push(p);
    }
    let literal = Profile::literal();
    let mut passing = 0;
    let mut distinct = 0;
    let mut chosen: Option<(Scalar, Profile, VerificationReport)> = None;
    for members in groups.values() {
        let module = JetModule::unshifted(fiber.clone(), members[0].clone());
        if !verify_sp_identity(&module, window).passed() {
            continue;
        }
        let rep = verify_jet_module(&module, window);
        if !rep.passed() {
            continue;
        }
        passing += members.len();
        distinct += 1;
        for p in members {
            let d = p.distance(&literal);
            let better = match &chosen {
                None => true,
                Some((bd, bp, _)) => d < *bd || (d == *bd && p < bp),
            };
            if better {
                chosen = Some((d, p.clone(), rep.clone()));
            }
        }
    }
    match chosen {
        Some((_, profile, mut report)) => {
            report.notes = vec![
                format!("fiber {} calibrated profile {profile}", fiber.label()),
                format!("{passing} of {searched} profiles pass; {distinct} distinct actions"),
            ];
            Ok(Calibration { profile, passing, distinct_actions: distinct, searched, report })
        }
        None => Err(Error::Calibration(match best {
            Some((r, p)) => format!("{r} at profile {p}"),
            None => "no profile survived the probes but none failed them either".into(),
        })),
    }
}

/// A fiber by kind for `sp_{2m}`.
pub fn fiber(m: usize, kind: Fiber) -> Result<SpRep> {
    SpRep::new(m, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::dv;

    fn defining() -> SpRep {
        SpRep::new(1, Fiber::Defining).unwrap()
    }

    #[test]
    fn sigma_shape() {
        let p = Profile::literal();
        assert!(sigma(1, &dv(&[0, 0]), &p).is_zero());
        let r = dv(&[1, -2]);
        assert_eq!(sigma(1, &r.scale(2), &p), sigma(1, &r, &p).scale(&Scalar::from_int(4)));
        assert!(!sigma(1, &dv(&[1, 0]), &p).get(0, 1).is_zero());
        for m in 1..=2 {
            let r = DegreeVector::new(&(0..2 * m as i64).map(|i| i - 1).collect::<Vec<_>>());
            assert!(super::super::sp::is_symplectic(&sigma(m, &r, &p)));
        }
    }

    #[test]
    fn operators() {
        let j = JetModule::unshifted(defining(), Profile::literal());
        let s = dv(&[3, -1]);
        assert_eq!(j.t_op(&dv(&[0, 0]), &s), Matrix::identity(2));
        assert!(j.h_op(&dv(&[0, 0]), &s).is_zero());
        let v = vec![Scalar::one(), Scalar::zero()];
        let (out, grade) = j.jet_action(&JetOp::D(0), &v, &dv(&[1, 0]));
        assert_eq!((out, grade), (v.clone(), dv(&[1, 0])));
    }

    #[test]
    fn trivial_fiber_passes_with_any_profile() {
        let t = SpRep::new(1, Fiber::Trivial).unwrap();
        let j = JetModule::unshifted(t, Profile::literal());
        assert!(verify_jet_module(&j, &Window::new(2, 2)).passed());
    }

    #[test]
    fn literal_profile_fails_on_defining_fiber() {
        let j = JetModule::unshifted(defining(), Profile::literal());
        assert!(!verify_sp_identity(&j, &Window::new(2, 2)).passed());
        assert!(!verify_jet_module(&j, &Window::new(2, 2)).passed());
    }

    #[test]
    fn hand_solved_profile_passes_with_shifts() {
        // m = 1: sigma = a r2^2 F + b r1 r2 H + c r1^2 E needs b = 1, ac = -1
        let p = Profile::from_ratios([(1, 1), (0, 1), (1, 1), (0, 1), (1, 1), (1, 1)]);
        let u = RationalVector::new(vec![Scalar::new(1, 3), Scalar::new(-2, 1)]);
        let w = RationalVector::new(vec![Scalar::new(1, 2), Scalar::new(5, 1)]);
        let j = JetModule::new(defining(), u, w, p.clone()).unwrap();
        assert!(verify_jet_module(&j, &Window::new(2, 2)).passed());
        let bad = JetModule::unshifted(defining(), p.scale(&Scalar::from_int(2)));
        assert!(!verify_jet_module(&bad, &Window::new(2, 2)).passed());
    }
}
