//! The functional equation
//! `(bar l, s) λ(r, s+l) + (bar l, r) λ(s, r+l) - (bar l, r+s) λ(r, s) = 0`
//! for the structure scalars `t^r t^s = λ(r, s) t^{r+s}` of an A-action
//! compatible with `H_N`, and its three-parameter constant solutions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num::integer::Integer;
use num::traits::{One, Zero};
use num::BigInt;
use serde_json::{Map, Value};

use crate::degree::{bar, bar_unchecked, DegreeVector, Window};
use crate::error::{Error, Result};
use crate::linalg::{rank_of_rows, Matrix, SparseEliminator, SparseRow};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// `λ(r, s)` on every pair of window degrees, with the constants of a
/// constant solution when known.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSystem {
    pub window: Window,
    pub values: BTreeMap<(DegreeVector, DegreeVector), Scalar>,
    /// value on pairs with `r, s, r+s` nonzero
    pub lambda: Option<Scalar>,
    /// value on `(r, -r)`, `r ≠ 0`
    pub mu: Option<Scalar>,
    /// value on pairs with a zero argument
    pub c: Option<Scalar>,
}

/// Which constant a pair carries in a constant solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairClass {
    Generic,
    Opposite,
    ZeroArgument,
}

pub fn pair_class(r: &DegreeVector, s: &DegreeVector) -> PairClass {
    if r.is_zero() || s.is_zero() {
        PairClass::ZeroArgument
    } else if r.add(s).is_zero() {
        PairClass::Opposite
    } else {
        PairClass::Generic
    }
}

fn key_string(r: &DegreeVector, s: &DegreeVector) -> String {
    let join = |v: &DegreeVector| v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    format!("({}|{})", join(r), join(s))
}

fn parse_key(k: &str) -> Result<(DegreeVector, DegreeVector)> {
    let inner = k
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad pair key '{k}'")))?;
    let (a, b) = inner.split_once('|').ok_or_else(|| Error::Parse(format!("bad pair key '{k}'")))?;
    let parse = |t: &str| -> Result<DegreeVector> {
        let v: std::result::Result<Vec<i64>, _> = t.split(',').map(|c| c.trim().parse::<i64>()).collect();
        v.map(|c| DegreeVector::new(&c)).map_err(|e| Error::Parse(format!("bad coordinate in '{k}': {e}")))
    };
    Ok((parse(a)?, parse(b)?))
}

impl LambdaSystem {
    /// The constant solution: `λ` on generic pairs, `μ` on opposite pairs,
    /// `c` when an argument is zero.
    pub fn family(lambda: &Scalar, mu: &Scalar, c: &Scalar, window: &Window) -> LambdaSystem {
        let pts = window.points();
        let mut values = BTreeMap::new();
        for r in &pts {
            for s in &pts {
                let v = match pair_class(r, s) {
                    PairClass::Generic => lambda,
                    PairClass::Opposite => mu,
                    PairClass::ZeroArgument => c,
                };
                values.insert((r.clone(), s.clone()), v.clone());
            }
        }
        LambdaSystem { window: *window, values, lambda: Some(lambda.clone()), mu: Some(mu.clone()), c: Some(c.clone()) }
    }

    pub fn get(&self, r: &DegreeVector, s: &DegreeVector) -> Result<&Scalar> {
        self.values
            .get(&(r.clone(), s.clone()))
            .ok_or_else(|| Error::OutOfWindow(format!("λ{} is outside the window R={}", key_string(r, s), self.window.radius)))
    }

    /// `{"(r|s)": "p/q", ..., "lambda", "mu", "c"}`
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for ((r, s), v) in &self.values {
            map.insert(key_string(r, s), Value::String(v.to_string()));
        }
        for (name, v) in [("lambda", &self.lambda), ("mu", &self.mu), ("c", &self.c)] {
            map.insert(name.to_string(), v.as_ref().map_or(Value::Null, |x| Value::String(x.to_string())));
        }
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<LambdaSystem> {
        let map = v.as_object().ok_or_else(|| Error::Parse("lambda system must be a JSON object".into()))?;
        let scalar = |x: &Value| -> Result<Scalar> {
            x.as_str().ok_or_else(|| Error::Parse(format!("expected a rational string, got {x}")))?.parse::<Scalar>().map_err(|e| Error::Parse(e.0))
        };
        let mut values = BTreeMap::new();
        let mut consts: HashMap<&str, Option<Scalar>> = HashMap::new();
        for (k, x) in map {
            match k.as_str() {
                "lambda" | "mu" | "c" => {
                    let c = if x.is_null() { None } else { Some(scalar(x)?) };
                    consts.insert(k.as_str(), c);
                }
                _ => {
                    values.insert(parse_key(k)?, scalar(x)?);
                }
            }
        }
        let (first, _) = values.keys().next().cloned().ok_or_else(|| Error::Parse("empty lambda system".into()))?;
        let arity = first.arity();
        let radius = values.keys().map(|(r, s)| r.max_abs().max(s.max_abs())).max().unwrap_or(0);
        let window = Window::new(radius, arity);
        if values.len() != window.len() * window.len() {
            return Err(Error::Parse(format!("lambda system is not total on the window R={radius}")));
        }
        let mut get = |k: &str| consts.remove(k).flatten();
        Ok(LambdaSystem { window, values, lambda: get("lambda"), mu: get("mu"), c: get("c") })
    }
}

impl fmt::Display for LambdaSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<Scalar>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
        write!(
            f,
            "lambda system on R={} ({} pairs): λ={} μ={} c={}",
            self.window.radius,
            self.values.len(),
            show(&self.lambda),
            show(&self.mu),
            show(&self.c)
        )
    }
}

fn bar_pair(l: &DegreeVector, r: &DegreeVector) -> i64 {
    bar_unchecked(l).dot(r)
}

/// The three terms of the equation at `(l, r, s)` as (coefficient, pair).
fn terms(l: &DegreeVector, r: &DegreeVector, s: &DegreeVector) -> [(i64, DegreeVector, DegreeVector); 3] {
    [
        (bar_pair(l, s), r.clone(), s.add(l)),
        (bar_pair(l, r), s.clone(), r.add(l)),
        (-bar_pair(l, &r.add(s)), r.clone(), s.clone()),
    ]
}

pub fn lambda_residual(system: &LambdaSystem, l: &DegreeVector, r: &DegreeVector, s: &DegreeVector) -> Result<Scalar> {
    let n = system.window.arity;
    for v in [l, r, s] {
        if v.arity() != n {
            return Err(Error::ArityMismatch(v.arity(), n));
        }
        if v.is_zero() {
            return Err(Error::Precondition("l, r, s must be nonzero".into()));
        }
    }
    bar(l)?;
    let mut out = Scalar::zero();
    for (c, a, b) in terms(l, r, s) {
        let v = system.get(&a, &b)?;
        out = out + Scalar::from_int(c) * v;
    }
    Ok(out)
}

/// Triples `(l, r, s)` of nonzero window degrees whose referenced pairs lie
/// in the window.
fn admissible_triples(window: &Window) -> impl Iterator<Item = (DegreeVector, DegreeVector, DegreeVector)> + '_ {
    let nz: Vec<DegreeVector> = window.iter().filter(|v| !v.is_zero()).collect();
    let per_l: Vec<(DegreeVector, Vec<DegreeVector>)> = nz
        .iter()
        .map(|l| (l.clone(), nz.iter().filter(|v| window.contains(&v.add(l))).cloned().collect()))
        .collect();
    per_l.into_iter().flat_map(|(l, shifted)| {
        let shifted2 = shifted.clone();
        shifted.into_iter().flat_map(move |r| {
            let l = l.clone();
            shifted2.clone().into_iter().map(move |s| (l.clone(), r.clone(), s))
        })
    })
}

/// Integer coefficients of `(λ, μ, c)` in the residual of a constant solution.
fn class_coefficients(l: &DegreeVector, r: &DegreeVector, s: &DegreeVector) -> [i64; 3] {
    let mut out = [0i64; 3];
    for (c, a, b) in terms(l, r, s) {
        let idx = match pair_class(&a, &b) {
            PairClass::Generic => 0,
            PairClass::Opposite => 1,
            PairClass::ZeroArgument => 2,
        };
        out[idx] += c;
    }
    out
}

/// Every admissible triple of a window grouped by the integer coefficients
/// its residual puts on `(λ, μ, c)`, with counts of the degenerate cases.
#[derive(Clone, Debug)]
pub struct TripleSummary {
    pub window: Window,
    pub by_coefficients: BTreeMap<[i64; 3], (u64, (DegreeVector, DegreeVector, DegreeVector))>,
    pub cases: BTreeMap<&'static str, u64>,
    pub triples: u64,
}

pub fn summarize_triples(window: &Window) -> TripleSummary {
    let mut by_coefficients: BTreeMap<[i64; 3], (u64, (DegreeVector, DegreeVector, DegreeVector))> = BTreeMap::new();
    let mut cases: BTreeMap<&'static str, u64> = BTreeMap::new();
    let mut triples = 0;
    for (l, r, s) in admissible_triples(window) {
        triples += 1;
        let sl = s.add(&l).is_zero();
        let rl = r.add(&l).is_zero();
        let rs = r.add(&s).is_zero();
        let lrs = l.add(&r).add(&s).is_zero();
        for (name, hit) in [("s+l=0", sl), ("r+l=0", rl), ("r+s=0", rs), ("l=-(r+s)", lrs)] {
            if hit {
                *cases.entry(name).or_insert(0) += 1;
            }
        }
        if !(sl || rl || rs || lrs) {
            *cases.entry("generic").or_insert(0) += 1;
        }
        let key = class_coefficients(&l, &r, &s);
        by_coefficients.entry(key).or_insert_with(|| (0, (l.clone(), r.clone(), s.clone()))).0 += 1;
    }
    TripleSummary { window: *window, by_coefficients, cases, triples }
}

/// `t^{-r} t^r t^s t^{-s}` grouped as `(t^{-r}t^r)(t^s t^{-s})` against
/// `(t^{-r}t^{-s})(t^r t^s)`; returns the second over the first.
pub fn associativity_factor(system: &LambdaSystem, r: &DegreeVector, s: &DegreeVector) -> Result<Scalar> {
    let zero = DegreeVector::zero(r.arity());
    let c = system.get(&zero, &zero)?;
    let first = system.get(&r.neg(), r)? * system.get(s, &s.neg())? * c * c;
    let rs = r.add(s);
    let second = system.get(&r.neg(), &s.neg())? * system.get(r, s)? * system.get(&rs.neg(), &rs)? * c;
    if first.is_zero() {
        return Err(Error::Precondition("degenerate system: t^{-r} t^r t^s t^{-s} vanishes".into()));
    }
    Ok(second / first)
}

/// Checks the equation on every admissible triple for the constant solution
/// `(λ, μ, c)`, and the associativity consequence `λ² = μ c`.
pub fn verify_thm91_family(lambda: &Scalar, mu: &Scalar, c: &Scalar, window: &Window) -> VerificationReport {
    verify_thm91_family_with(lambda, mu, c, &summarize_triples(window))
}

/// As [`verify_thm91_family`], reusing a triple summary.
pub fn verify_thm91_family_with(lambda: &Scalar, mu: &Scalar, c: &Scalar, summary: &TripleSummary) -> VerificationReport {
    let window = summary.window;
    let mut rep = VerificationReport::new("lambda-family", "HN", window.arity, Some(window.radius));
    rep.note(format!("λ={lambda} μ={mu} c={c}"));
    if window.radius < 2 {
        rep.fail(vec![format!("R={}", window.radius)], "window radius must be at least 2".into());
        return rep.finish();
    }
    if window.arity % 2 != 0 {
        rep.fail(vec![format!("N={}", window.arity)], "bar needs even N".into());
        return rep.finish();
    }
    if lambda.is_zero() || mu.is_zero() || c.is_zero() {
        rep.fail(vec![], "λ, μ, c must be nonzero".into());
        return rep.finish();
    }
    let consts = [lambda, mu, c];
    for (coeffs, (count, (l, r, s))) in &summary.by_coefficients {
        let res: Scalar = coeffs.iter().zip(consts).map(|(k, v)| Scalar::from_int(*k) * v).sum();
        rep.count("triples", *count);
        if !res.is_zero() {
            rep.fail(vec![format!("l={l}"), format!("r={r}"), format!("s={s}"), format!("{count} triples")], res.to_string());
            rep.failures += count - 1;
        }
    }
    for (name, n) in &summary.cases {
        rep.count(&format!("case {name}"), *n);
    }
    let system = LambdaSystem::family(lambda, mu, c, &window);
    let n = window.arity;
    let r = DegreeVector::unit(n, 0);
    let s = DegreeVector::unit(n, n - 1);
    match associativity_factor(&system, &r, &s) {
        Ok(f) if f.is_one() => rep.note("associativity consistent: λ² = μc"),
        Ok(f) => {
            rep.fail(vec![format!("r={r}"), format!("s={s}")], format!("associativity factor λ²/(μc) = {f}"));
        }
        Err(e) => rep.fail(vec![], e.to_string()),
    }
    rep.finish()
}

/// Largest number of unknowns `λ(r, s)` the nullspace oracle accepts.
pub const NULLSPACE_UNKNOWN_CAP: usize = 20_000;

#[derive(Clone, Debug)]
pub struct LambdaNullspace {
    pub window: Window,
    pub symmetrized: bool,
    /// unknown `i` is `λ(pairs[i])`
    pub pairs: Vec<(DegreeVector, DegreeVector)>,
    pub basis: Vec<Vec<Scalar>>,
    pub equations: u64,
    pub rank: usize,
    /// the generic, opposite and zero-argument indicator vectors solve the system
    pub family_contained: bool,
    /// rank of the three indicator vectors
    pub family_rank: usize,
}

impl LambdaNullspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn system(&self, v: &[Scalar]) -> LambdaSystem {
        let values = self.pairs.iter().cloned().zip(v.iter().cloned()).collect();
        LambdaSystem { window: self.window, values, lambda: None, mu: None, c: None }
    }
}

/// Exact kernel of the equation over all admissible window triples, with
/// `λ(r, s)` for every window pair as unknowns; optionally adds
/// `λ(r, s) = λ(s, r)`.
pub fn lambda_nullspace(window: &Window, symmetrize: bool) -> Result<LambdaNullspace> {
    if window.radius < 2 {
        return Err(Error::Precondition("window radius must be at least 2".into()));
    }
    if window.arity % 2 != 0 {
        return Err(Error::Arity(format!("bar needs even N, got {}", window.arity)));
    }
    if window.len() * window.len() > NULLSPACE_UNKNOWN_CAP {
        return Err(Error::Capability(format!(
            "{} unknowns exceed the nullspace cap of {NULLSPACE_UNKNOWN_CAP}",
            window.len() * window.len()
        )));
    }
    let pts = window.points();
    let pairs: Vec<(DegreeVector, DegreeVector)> =
        pts.iter().flat_map(|r| pts.iter().map(move |s| (r.clone(), s.clone()))).collect();
    let index: HashMap<(DegreeVector, DegreeVector), usize> = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut elim = SparseEliminator::new();
    let mut equations = 0u64;
    let mut family_ok = true;
    let push = |row: BTreeMap<usize, i64>, elim: &mut SparseEliminator| {
        let row: SparseRow = row.into_iter().filter(|(_, c)| *c != 0).map(|(i, c)| (i, Scalar::from_int(c))).collect();
        if !row.is_empty() {
            elim.insert(&row);
        }
    };
    for (l, r, s) in admissible_triples(window) {
        equations += 1;
        let mut row: BTreeMap<usize, i64> = BTreeMap::new();
        for (c, a, b) in terms(&l, &r, &s) {
            *row.entry(index[&(a, b)]).or_insert(0) += c;
        }
        if class_coefficients(&l, &r, &s).iter().any(|c| *c != 0) {
            family_ok = false;
        }
        push(row, &mut elim);
    }
    if symmetrize {
        for (i, (r, s)) in pairs.iter().enumerate() {
            let j = index[&(s.clone(), r.clone())];
            if i < j {
                equations += 1;
                push(BTreeMap::from([(i, 1), (j, -1)]), &mut elim);
            }
        }
    }
    let basis = elim.nullspace(pairs.len());
    let indicators: Vec<Vec<Scalar>> = [PairClass::Generic, PairClass::Opposite, PairClass::ZeroArgument]
        .iter()
        .map(|cls| {
            pairs.iter().map(|(r, s)| if pair_class(r, s) == *cls { Scalar::one() } else { Scalar::zero() }).collect()
        })
        .collect();
    let family_rank = rank_of_rows(&indicators);
    Ok(LambdaNullspace {
        window: *window,
        symmetrized: symmetrize,
        pairs,
        rank: elim.rank(),
        basis,
        equations,
        family_contained: family_ok,
        family_rank,
    })
}

fn proportional(a: &DegreeVector, b: &DegreeVector) -> bool {
    let (x, y) = (a.coords(), b.coords());
    (0..x.len()).all(|i| (0..x.len()).all(|j| x[i] * y[j] == x[j] * y[i]))
}

/// Checks the consequences of the equation stated for all solutions, on
/// every nullspace basis vector, wherever the window holds all referenced
/// pairs. `paired` needs `(bar l, s) != 0`, `independent` needs `r, s` not
/// proportional. Multiples `j` range over `±1, ±2`.
pub fn verify_lemma_filters(ns: &LambdaNullspace) -> VerificationReport {
    let window = ns.window;
    let mut rep = VerificationReport::new("lambda-lemmas", "HN", window.arity, Some(window.radius));
    let pts: Vec<DegreeVector> = window.iter().filter(|v| !v.is_zero()).collect();
    let multiples = [-2i64, -1, 1, 2];
    for (idx, v) in ns.basis.iter().enumerate() {
        let sys = ns.system(v);
        let mut check = |name: &str, a: (&DegreeVector, &DegreeVector), b: (&DegreeVector, &DegreeVector)| {
            let (Ok(x), Ok(y)) = (sys.get(a.0, a.1), sys.get(b.0, b.1)) else { return };
            rep.count(name, 1);
            if x != y {
                rep.fail(
                    vec![format!("basis vector {idx}"), name.to_string(), key_string(a.0, a.1), key_string(b.0, b.1)],
                    format!("{x} vs {y}"),
                );
            }
        };
        for s in &pts {
            let ss = (s, s);
            for l in &pts {
                let sl = s.add(l);
                let ll = (l, l);
                if bar_pair(l, s) != 0 {
                    check("paired: λ(s+l,s)=λ(s,s)", (&sl, s), ss);
                    check("paired: λ(s,s+l)=λ(s,s)", (s, &sl), ss);
                    check("paired: λ(s,l)=λ(s,s)", (s, l), ss);
                    check("paired: λ(s,s)=λ(l,l)", ss, ll);
                    check("paired: λ(s+l,s+l)=λ(s,s)", (&sl, &sl), ss);
                    for j in multiples {
                        let (jl, js) = (l.scale(j), s.scale(j));
                        check("paired: λ(s+l,jl)=λ(s,s)", (&sl, &jl), ss);
                        check("paired: λ(s,js+l)=λ(s,s)", (s, &js.add(l)), ss);
                    }
                }
                if !proportional(l, s) {
                    let r = l;
                    check("independent: λ(r,r)=λ(s,s)", (r, r), ss);
                    check("independent: λ(s+r,s)=λ(s,s)", (&sl, s), ss);
                    check("independent: λ(r,s)=λ(s,s)", (r, s), ss);
                    for j in multiples {
                        let (jr, js) = (r.scale(j), s.scale(j));
                        check("independent: λ(s+r,jr)=λ(s,s)", (&sl, &jr), ss);
                        check("independent: λ(s,js+r)=λ(s,s)", (s, &js.add(r)), ss);
                    }
                }
            }
            for j in multiples {
                let js = s.scale(j);
                check("multiples: λ(js,js)=λ(s,s)", (&js, &js), ss);
                for p in multiples {
                    if j + p != 0 {
                        check("multiples: λ(js,ps)=λ(s,s)", (&js, &s.scale(p)), ss);
                    }
                }
            }
        }
        let e = DegreeVector::unit(window.arity, 0);
        let (reference_generic, reference_opposite) = ((&e, &e), (&e, &e.neg()));
        for r in &pts {
            check("opposite: λ(r,-r)=λ(e,-e)", (r, &r.neg()), reference_opposite);
            for s in &pts {
                if !r.add(s).is_zero() {
                    check("generic: λ(r,s)=λ(e,e)", (r, s), reference_generic);
                }
            }
        }
    }
    rep.note(format!("{} nullspace vectors{}", ns.dim(), if ns.symmetrized { ", symmetrized" } else { "" }));
    rep.finish()
}

fn lcm_of_denominators(v: &[Scalar]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()))
}

/// An integral `k` with `(r, bar k) ≠ 0` and `(k, bar s) = 0`, given
/// `r ∉ Q s` and `(r, bar s) = 0`.
pub fn construct_k(r: &DegreeVector, s: &DegreeVector) -> Result<DegreeVector> {
    let n = r.arity();
    if s.arity() != n {
        return Err(Error::ArityMismatch(s.arity(), n));
    }
    if n < 4 || n % 2 != 0 {
        return Err(Error::Precondition(format!("needs even N >= 4, got {n}")));
    }
    if r.is_zero() || s.is_zero() {
        return Err(Error::Precondition("r and s must be nonzero".into()));
    }
    if proportional(r, s) {
        return Err(Error::Precondition(format!("{r} is a rational multiple of {s}")));
    }
    if r.dot(&bar(s)?) != 0 {
        return Err(Error::Precondition(format!("({r}, bar {s}) ≠ 0")));
    }
    let rs = r.dot(s);
    let bar_k: DegreeVector = if rs == 0 {
        r.clone()
    } else {
        let ss = s.dot(s);
        let v: Vec<Scalar> = (0..n)
            .map(|i| Scalar::new(s.coords()[i], ss) - Scalar::new(r.coords()[i], rs))
            .collect();
        let l = Scalar::from_big(num::BigRational::from_integer(lcm_of_denominators(&v)));
        let ints: Vec<i64> = v
            .iter()
            .map(|x| (x * &l).to_i64().ok_or_else(|| Error::Precondition("integral scaling overflowed".into())))
            .collect::<Result<_>>()?;
        DegreeVector::new(&ints)
    };
    let k = bar_unchecked(&bar_k).neg();
    if r.dot(&bar_unchecked(&k)) == 0 || k.dot(&bar_unchecked(s)) != 0 {
        return Err(Error::Precondition(format!("constructed k={k} misses a conclusion")));
    }
    Ok(k)
}

/// Grade-shift operators `t^r` of a module with a uniform basis.
pub trait ShiftAction {
    fn arity(&self) -> usize;
    fn dim(&self) -> usize;
    /// `t^r` from grade `k` to grade `k + r`
    fn t_op(&self, r: &DegreeVector, k: &DegreeVector) -> Result<Matrix>;
}

impl ShiftAction for crate::rep::JetModule {
    fn arity(&self) -> usize {
        self.n()
    }
    fn dim(&self) -> usize {
        crate::rep::JetModule::dim(self)
    }
    fn t_op(&self, r: &DegreeVector, k: &DegreeVector) -> Result<Matrix> {
        Ok(crate::rep::JetModule::t_op(self, r, k))
    }
}

/// `t^r` acting as `f(r)` times the bare shift on a one-dimensional fiber.
pub struct ScaledShift<F: Fn(&DegreeVector) -> Scalar> {
    pub n: usize,
    pub f: F,
}

impl<F: Fn(&DegreeVector) -> Scalar> ShiftAction for ScaledShift<F> {
    fn arity(&self) -> usize {
        self.n
    }
    fn dim(&self) -> usize {
        1
    }
    fn t_op(&self, r: &DegreeVector, _k: &DegreeVector) -> Result<Matrix> {
        Ok(Matrix::identity(1).scale(&(self.f)(r)))
    }
}

/// Solves `t^r t^s v = λ(r, s) t^{r+s} v` at grade 0 for every window pair,
/// then records `λ, μ, c` when the result is constant on each pair class.
pub fn extract_lambda<A: ShiftAction + ?Sized>(action: &A, window: &Window) -> Result<(LambdaSystem, VerificationReport)> {
    if window.arity != action.arity() {
        return Err(Error::ArityMismatch(window.arity, action.arity()));
    }
    let zero = DegreeVector::zero(window.arity);
    let pts = window.points();
    let mut values = BTreeMap::new();
    for r in &pts {
        for s in &pts {
            let lhs = &action.t_op(r, s)? * &action.t_op(s, &zero)?;
            let rhs = action.t_op(&r.add(s), &zero)?;
            let pos = rhs
                .entries()
                .iter()
                .position(|c| !c.is_zero())
                .ok_or_else(|| Error::NotJetType(format!("t^{} is not injective at grade 0", r.add(s))))?;
            let c = &lhs.entries()[pos] / &rhs.entries()[pos];
            if lhs != rhs.scale(&c) {
                let col = (0..lhs.cols()).find(|&j| lhs.column(j) != rhs.scale(&c).column(j)).unwrap_or(0);
                return Err(Error::NotJetType(format!(
                    "t^{r} t^{s} is not proportional to t^{}; witness basis vector {col}",
                    r.add(s)
                )));
            }
            values.insert((r.clone(), s.clone()), c);
        }
    }
    let mut rep = VerificationReport::new("lambda-constancy", "HN", window.arity, Some(window.radius));
    let mut classes: BTreeMap<PairClass, BTreeSet<Scalar>> = BTreeMap::new();
    for ((r, s), v) in &values {
        classes.entry(pair_class(r, s)).or_default().insert(v.clone());
    }
    let constant = |cls: PairClass| classes.get(&cls).filter(|v| v.len() == 1).and_then(|v| v.iter().next().cloned());
    let (lambda, mu, c) = (constant(PairClass::Generic), constant(PairClass::Opposite), constant(PairClass::ZeroArgument));
    for (cls, vals) in &classes {
        rep.count(&format!("{cls:?} values"), vals.len() as u64);
        if vals.len() > 1 {
            let shown: Vec<String> = vals.iter().take(4).map(|v| v.to_string()).collect();
            rep.fail(vec![format!("{cls:?} pairs")], format!("not constant: {}", shown.join(", ")));
        }
    }
    if let (Some(l), Some(m), Some(c)) = (&lambda, &mu, &c) {
        if l * l != m * c {
            rep.fail(vec![format!("λ={l} μ={m} c={c}")], "λ² ≠ μc".into());
        }
    }
    let sys = LambdaSystem { window: *window, values, lambda, mu, c };
    Ok((sys, rep.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::dv;
    use crate::scalar::{frac, int};

    #[test]
    fn constant_families() {
        let w = Window::new(2, 2);
        let summary = summarize_triples(&w);
        assert!(verify_thm91_family_with(&int(1), &int(1), &int(1), &summary).passed());
        assert!(verify_thm91_family_with(&int(2), &int(4), &int(1), &summary).passed());
        let bad = verify_thm91_family_with(&int(1), &int(1), &int(2), &summary);
        assert!(!bad.passed());
        assert!(bad.witnesses.iter().any(|w| w.residual.ends_with("= 1/2")));
        for case in ["s+l=0", "r+l=0", "r+s=0", "l=-(r+s)", "generic"] {
            assert!(summary.cases[case] > 0, "{case}");
        }
        let sys = LambdaSystem::family(&int(1), &int(1), &int(2), &w);
        assert_eq!(associativity_factor(&sys, &dv(&[1, 0]), &dv(&[0, 1])).unwrap(), frac(1, 2));
    }

    #[test]
    fn residual_and_json() {
        let w = Window::new(2, 2);
        let sys = LambdaSystem::family(&int(3), &int(9), &int(1), &w);
        assert!(lambda_residual(&sys, &dv(&[1, 0]), &dv(&[0, 1]), &dv(&[-1, 1])).unwrap().is_zero());
        assert!(matches!(
            lambda_residual(&sys, &dv(&[2, 0]), &dv(&[1, 1]), &dv(&[1, 0])),
            Err(Error::OutOfWindow(_))
        ));
        let back = LambdaSystem::from_json(&sys.to_json()).unwrap();
        assert_eq!(back, sys);
        assert!(sys.to_json().get("(1,0|0,1)").is_some());
    }

    #[test]
    fn nullspace_contains_family() {
        let ns = lambda_nullspace(&Window::new(2, 2), false).unwrap();
        assert!(ns.family_contained);
        assert_eq!(ns.family_rank, 3);
        assert!(ns.dim() >= 3);
        assert!(verify_lemma_filters(&ns).passed());
        let sym = lambda_nullspace(&Window::new(2, 2), true).unwrap();
        assert!(sym.dim() >= 3 && sym.dim() < ns.dim());
        assert!(verify_lemma_filters(&sym).passed());
        let v: Vec<Scalar> = ns.basis[0].iter().map(|x| x * &int(7)).collect();
        let sys = ns.system(&v);
        let (l, r, s) = (dv(&[1, 0]), dv(&[0, 1]), dv(&[1, -1]));
        assert!(lambda_residual(&sys, &l, &r, &s).unwrap().is_zero());
    }

    #[test]
    fn construct_k_examples() {
        assert_eq!(construct_k(&dv(&[0, 1, 0, 0]), &dv(&[1, 0, 0, 0])).unwrap(), dv(&[0, 0, 0, 1]));
        assert_eq!(construct_k(&dv(&[1, 1, 0, 0]), &dv(&[1, 0, 0, 0])).unwrap(), dv(&[0, 0, 0, -1]));
        assert!(construct_k(&dv(&[0, 1]), &dv(&[1, 0])).is_err());
        assert!(construct_k(&dv(&[2, 0, 0, 0]), &dv(&[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn extraction() {
        use crate::rep::jet::fiber;
        use crate::rep::{Fiber, JetModule, Profile};
        let w = Window::new(1, 2);
        let jet = JetModule::unshifted(fiber(1, Fiber::Defining).unwrap(), Profile::literal());
        let (sys, rep) = extract_lambda(&jet, &w).unwrap();
        assert!(rep.passed());
        assert_eq!((sys.lambda, sys.mu, sys.c), (Some(int(1)), Some(int(1)), Some(int(1))));
        let scaled = ScaledShift { n: 2, f: |r: &DegreeVector| int(2).pow(r.coords().iter().map(|c| c.abs() as i32).sum()) };
        let (_, rep) = extract_lambda(&scaled, &w).unwrap();
        assert!(!rep.passed());
    }
}
