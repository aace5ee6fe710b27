//! `key = value` run configuration with line and field diagnostics.
//!
//! Blank lines and `#` comments are skipped; `[section]` headers only group
//! keys. Later assignments win, and command-line flags are applied last.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraSpec, Decomposition, Family};
use crate::degree::{RationalVector, Window};
use crate::error::{Error, Result};
use crate::rep::{Fiber, Profile};
use crate::scalar::Scalar;
use crate::simple_lie::{build_sl, SimpleLieDatum};

/// Default hard caps on window radius and arity.
pub const RADIUS_CAP: i64 = 4;
pub const ARITY_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleRecipe {
    Jet,
    Evaluation,
    Realization,
    Induced,
}

impl FromStr for ModuleRecipe {
    type Err = Error;
    fn from_str(s: &str) -> Result<ModuleRecipe> {
        match s.trim().to_ascii_lowercase().as_str() {
            "jet" => Ok(ModuleRecipe::Jet),
            "evaluation" | "loop" => Ok(ModuleRecipe::Evaluation),
            "realization" => Ok(ModuleRecipe::Realization),
            "induced" => Ok(ModuleRecipe::Induced),
            other => Err(Error::Parse(format!("unknown module recipe '{other}'"))),
        }
    }
}

impl fmt::Display for ModuleRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleRecipe::Jet => "jet",
            ModuleRecipe::Evaluation => "evaluation",
            ModuleRecipe::Realization => "realization",
            ModuleRecipe::Induced => "induced",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub family: Option<Family>,
    pub n: Option<usize>,
    /// `slK`
    pub g: String,
    pub radius: Option<i64>,
    pub decomposition: Option<Decomposition>,
    pub module: Option<ModuleRecipe>,
    pub m: Option<usize>,
    pub fiber: Fiber,
    pub profile: Option<Profile>,
    pub calibrate: bool,
    pub points: Vec<RationalVector>,
    pub highest: Vec<Vec<i64>>,
    pub lambda: Scalar,
    pub mu: Scalar,
    pub c: Scalar,
    pub shear: i64,
    pub seed: u64,
    pub depth: usize,
    pub output: Option<String>,
    pub strict: bool,
    pub unsafe_large: bool,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            family: None,
            n: None,
            g: "sl2".into(),
            radius: None,
            decomposition: None,
            module: None,
            m: None,
            fiber: Fiber::Defining,
            profile: None,
            calibrate: false,
            points: Vec::new(),
            highest: Vec::new(),
            lambda: Scalar::from_int(1),
            mu: Scalar::from_int(1),
            c: Scalar::from_int(1),
            shear: 1,
            seed: 7,
            depth: 1,
            output: None,
            strict: false,
            unsafe_large: false,
        }
    }
}

pub const KEYS: [&str; 21] = [
    "family", "N", "g", "radius", "decomposition", "module", "m", "fiber", "profile", "calibrate", "points", "highest",
    "lambda", "mu", "c", "shear", "seed", "depth", "output", "strict", "unsafe_large",
];

fn canonical_key(key: &str) -> Option<&'static str> {
    let k = key.trim();
    let alias = match k {
        "n" => "N",
        "lam" => "lambda",
        "unsafe-large" => "unsafe_large",
        "R" | "r" => "radius",
        _ => k,
    };
    KEYS.iter().copied().find(|x| *x == alias)
}

fn detail(e: Error) -> String {
    match e {
        Error::Parse(m) => m,
        other => other.to_string(),
    }
}

fn config_error(field: &str, message: String) -> Error {
    Error::Config { location: format!("field {field}"), message }
}

fn parse_bool(v: &str) -> Result<bool> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(Error::Parse(format!("expected a boolean, got '{other}'"))),
    }
}

fn parse_num<T: FromStr>(v: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    v.trim().parse::<T>().map_err(|e| Error::Parse(format!("'{}': {e}", v.trim())))
}

/// `a,b;c,d` as a list of integer rows.
fn parse_rows(v: &str) -> Result<Vec<Vec<i64>>> {
    v.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.split(',').map(|x| parse_num::<i64>(x)).collect())
        .collect()
}

fn parse_rational_rows(v: &str) -> Result<Vec<RationalVector>> {
    v.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let c: Result<Vec<Scalar>> = p.split(',').map(|x| parse_num::<Scalar>(x)).collect();
            c.map(RationalVector::new)
        })
        .collect()
}

/// `p1,...,p6` rationals.
fn parse_profile(v: &str) -> Result<Profile> {
    let c: Vec<Scalar> = v.split(',').map(|x| parse_num::<Scalar>(x)).collect::<Result<_>>()?;
    let arr: [Scalar; 6] = c.try_into().map_err(|c: Vec<Scalar>| Error::Parse(format!("a profile has 6 entries, got {}", c.len())))?;
    Ok(Profile(arr))
}

impl RunConfig {
    /// Applies one assignment; `key` may be an alias.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = canonical_key(key)
            .ok_or_else(|| Error::Config { location: format!("key '{}'", key.trim()), message: "unknown key".into() })?;
        let v = value.trim();
        let field = |e: Error| Error::Config { location: format!("field {key}"), message: detail(e) };
        match key {
            "family" => self.family = Some(v.parse().map_err(field)?),
            "N" => self.n = Some(parse_num(v).map_err(field)?),
            "g" => {
                sl_rank(v).map_err(field)?;
                self.g = v.to_string();
            }
            "radius" => self.radius = Some(parse_num(v).map_err(field)?),
            "decomposition" => self.decomposition = Some(v.parse().map_err(field)?),
            "module" => self.module = Some(v.parse().map_err(field)?),
            "m" => self.m = Some(parse_num(v).map_err(field)?),
            "fiber" => self.fiber = v.parse().map_err(field)?,
            "profile" => self.profile = Some(parse_profile(v).map_err(field)?),
            "calibrate" => self.calibrate = parse_bool(v).map_err(field)?,
            "points" => self.points = parse_rational_rows(v).map_err(field)?,
            "highest" => self.highest = parse_rows(v).map_err(field)?,
            "lambda" => self.lambda = parse_num(v).map_err(field)?,
            "mu" => self.mu = parse_num(v).map_err(field)?,
            "c" => self.c = parse_num(v).map_err(field)?,
            "shear" => self.shear = parse_num(v).map_err(field)?,
            "seed" => self.seed = parse_num(v).map_err(field)?,
            "depth" => self.depth = parse_num(v).map_err(field)?,
            "output" => self.output = Some(v.to_string()),
            "strict" => self.strict = parse_bool(v).map_err(field)?,
            "unsafe_large" => self.unsafe_large = parse_bool(v).map_err(field)?,
            _ => unreachable!("key list and match agree"),
        }
        Ok(())
    }

    /// Applies a `key = value` document.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() || (line.starts_with('[') && line.ends_with(']')) {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config {
                location: format!("line {}", no + 1),
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            self.set(k, v).map_err(|e| match e {
                Error::Config { location, message } => Error::Config { location: format!("line {}, {location}", no + 1), message },
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        c.apply_text(text)?;
        Ok(c)
    }

    pub fn g_datum(&self) -> Result<SimpleLieDatum> {
        build_sl(sl_rank(&self.g)?)
    }

    /// Enforces the window caps unless `unsafe_large`.
    pub fn window(&self, default_radius: i64, n: usize) -> Result<Window> {
        let r = self.radius.unwrap_or(default_radius);
        if r < 0 {
            return Err(config_error("radius", format!("must be non-negative, got {r}")));
        }
        if !self.unsafe_large {
            if r > RADIUS_CAP {
                return Err(config_error("radius", format!("{r} exceeds the cap {RADIUS_CAP}; pass --unsafe-large")));
            }
            if n > ARITY_CAP {
                return Err(config_error("N", format!("{n} exceeds the cap {ARITY_CAP}; pass --unsafe-large")));
            }
        }
        Ok(Window::new(r, n))
    }

    /// The algebra named by `family`, `N` and `g`, with parity checked.
    pub fn spec(&self, default_family: Family, default_n: usize) -> Result<AlgebraSpec> {
        let family = self.family.unwrap_or(default_family);
        let n = self.n.unwrap_or(default_n);
        let g = if family.has_g() { Some(self.g_datum()?) } else { None };
        AlgebraSpec::new(family, n, g).map_err(|e| config_error("family", detail(e)))
    }

    /// The echo stored in every report bundle.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("family", self.family.map(|f| f.to_string()));
        put("N", self.n.map(|n| n.to_string()));
        put("g", Some(self.g.clone()));
        put("radius", self.radius.map(|r| r.to_string()));
        put("decomposition", self.decomposition.map(|d| d.to_string()));
        put("module", self.module.map(|d| d.to_string()));
        put("m", self.m.map(|d| d.to_string()));
        put("fiber", Some(self.fiber.to_string()));
        put("profile", self.profile.as_ref().map(|p| p.to_string()));
        put("calibrate", Some(self.calibrate.to_string()));
        if !self.points.is_empty() {
            put("points", Some(self.points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")));
        }
        if !self.highest.is_empty() {
            put("highest", Some(format!("{:?}", self.highest)));
        }
        put("lambda", Some(self.lambda.to_string()));
        put("mu", Some(self.mu.to_string()));
        put("c", Some(self.c.to_string()));
        put("shear", Some(self.shear.to_string()));
        put("seed", Some(self.seed.to_string()));
        put("depth", Some(self.depth.to_string()));
        put("strict", Some(self.strict.to_string()));
        m
    }
}

/// `slK` → `K`.
pub fn sl_rank(name: &str) -> Result<usize> {
    let s = name.trim().to_ascii_lowercase();
    let k = s
        .strip_prefix("sl")
        .and_then(|k| k.trim_start_matches('_').parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("unknown simple Lie algebra '{name}' (expected slK)")))?;
    if k < 2 {
        return Err(Error::Parse(format!("sl{k} is not simple")));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_diagnostics() {
        let c = RunConfig::parse("# run\n[algebra]\nfamily = tauH\nN = 4\nradius = 2\n\n[module]\nfiber = sym2\nhighest = 1;0\n").unwrap();
        assert_eq!(c.family, Some(Family::TauH));
        assert_eq!(c.n, Some(4));
        assert_eq!(c.fiber, Fiber::SymSquare);
        assert_eq!(c.highest, vec![vec![1], vec![0]]);
        let e = RunConfig::parse("family = tauH\nradius = two\n").unwrap_err().to_string();
        assert!(e.contains("line 2") && e.contains("radius"), "{e}");
        let e = RunConfig::parse("color = red").unwrap_err().to_string();
        assert!(e.contains("line 1") && e.contains("unknown key"), "{e}");
        let e = RunConfig::parse("just words").unwrap_err().to_string();
        assert!(e.contains("key = value"), "{e}");
    }

    #[test]
    fn caps_and_parity() {
        let mut c = RunConfig::default();
        c.set("radius", "5").unwrap();
        assert!(c.window(2, 2).is_err());
        c.unsafe_large = true;
        assert!(c.window(2, 2).is_ok());
        c.set("family", "tauH").unwrap();
        c.set("N", "3").unwrap();
        assert!(c.spec(Family::TauH, 2).is_err());
        assert!(c.set("g", "g2").is_err());
        c.set("profile", "1,1/2,1/2,1/2,1/2,1/2").unwrap();
        assert_eq!(c.profile.unwrap().to_string(), "(1,1/2,1/2,1/2,1/2,1/2)");
    }
}
