//! Command-line runner behind the `toroidal` binary.
//!
//! Exit codes: 0 when no check failed, 1 on a failed check (or a partial or
//! inconclusive one under `--strict`), 2 on configuration or capability
//! errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{verify_jacobi, verify_closure, Decomposition, Family};
use crate::automorphism::{random_unimodular, shear_matrix, verify_homomorphism, verify_kernel_image};
use crate::config::{ModuleRecipe, RunConfig};
use crate::degree::RationalVector;
use crate::error::{Error, Result};
use crate::forms::{verify_ea_axioms, verify_form};
use crate::lambda::{lambda_nullspace, verify_lemma_filters, verify_thm91_family, NULLSPACE_UNKNOWN_CAP};
use crate::rep::{
    calibrate_jet_coefficients, induced_module, realization_module, simple_quotient_window, verify_center_trivial,
    verify_integrability, verify_jet_module, verify_representation, verify_sp_identity, verify_top_dimension,
    EvaluationModule, JetModule, SpRep, Top,
};
use crate::report::{report_diff, ReportBundle, Status, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Jacobi,
    Closure,
    Form,
    Eala,
    Automorphism,
    Jet,
    Evaluation,
    Realization,
    Lambda,
    All,
}

#[derive(Parser, Debug)]
#[command(name = "toroidal", about = "Exact checks for toroidal and extended affine Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Structural diff of two JSON report files, ignoring timing.
    #[command(name = "report-diff", alias = "report_diff")]
    ReportDiff { a: PathBuf, b: PathBuf },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    /// `key = value` file; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long = "N", alias = "n")]
    pub n: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub radius: Option<String>,
    #[arg(long)]
    pub decomposition: Option<String>,
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub fiber: Option<String>,
    /// six comma-separated rationals
    #[arg(long, allow_hyphen_values = true)]
    pub profile: Option<String>,
    #[arg(long)]
    pub calibrate: bool,
    /// evaluation points, `a,b;c,d`
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    /// highest weights in fundamental coordinates, `1;0,1`
    #[arg(long)]
    pub highest: Option<String>,
    #[arg(long = "lam", alias = "lambda", allow_hyphen_values = true)]
    pub lam: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long)]
    pub shear: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub depth: Option<String>,
    /// write the JSON bundle here
    #[arg(long)]
    pub output: Option<String>,
    /// print the JSON bundle instead of the summary
    #[arg(long)]
    pub json: bool,
    /// partial and inconclusive reports fail the run
    #[arg(long)]
    pub strict: bool,
    /// lift the window caps
    #[arg(long = "unsafe-large")]
    pub unsafe_large: bool,
}

impl VerifyArgs {
    /// Config file first, then flags.
    pub fn config(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            cfg.apply_text(&text)?;
        }
        let flags = [
            ("family", &self.family),
            ("N", &self.n),
            ("g", &self.g),
            ("radius", &self.radius),
            ("decomposition", &self.decomposition),
            ("module", &self.module),
            ("m", &self.m),
            ("fiber", &self.fiber),
            ("profile", &self.profile),
            ("points", &self.points),
            ("highest", &self.highest),
            ("lambda", &self.lam),
            ("mu", &self.mu),
            ("c", &self.c),
            ("shear", &self.shear),
            ("seed", &self.seed),
            ("depth", &self.depth),
            ("output", &self.output),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                cfg.set(k, v).map_err(|e| match e {
                    Error::Config { location, message } => Error::Config { location: format!("flag --{k} ({location})"), message },
                    other => other,
                })?;
            }
        }
        cfg.calibrate |= self.calibrate;
        cfg.strict |= self.strict;
        cfg.unsafe_large |= self.unsafe_large;
        Ok(cfg)
    }
}

fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let t = Instant::now();
    let mut r = f();
    r.timing_ms = Some(t.elapsed().as_millis() as u64);
    r
}

fn jet_for(cfg: &RunConfig, m: usize, out: &mut Vec<VerificationReport>) -> Result<JetModule> {
    let fiber = SpRep::new(m, cfg.fiber)?;
    let profile = match (&cfg.profile, cfg.calibrate) {
        (Some(p), false) => p.clone(),
        _ => {
            let t = Instant::now();
            let cal = calibrate_jet_coefficients(m, &fiber, &cfg.window(2, 2 * m)?.min_radius(2))?;
            let mut rep = cal.report.clone();
            rep.check = "jet-calibration".into();
            rep.note(format!("published profile {}", cal.profile));
            rep.note(format!("{} of {} profiles pass; {} distinct actions", cal.passing, cal.searched, cal.distinct_actions));
            rep.timing_ms = Some(t.elapsed().as_millis() as u64);
            out.push(rep);
            cal.profile
        }
    };
    Ok(JetModule::unshifted(fiber, profile))
}

trait MinRadius {
    fn min_radius(self, r: i64) -> Self;
}

impl MinRadius for crate::degree::Window {
    fn min_radius(self, r: i64) -> Self {
        crate::degree::Window::new(self.radius.max(r), self.arity)
    }
}

fn default_points(cfg: &RunConfig) -> Vec<RationalVector> {
    if cfg.points.is_empty() {
        vec![RationalVector::from_ints(&[1]), RationalVector::from_ints(&[2])]
    } else {
        cfg.points.clone()
    }
}

fn default_highest(cfg: &RunConfig, count: usize, rank: usize) -> Vec<Vec<i64>> {
    if cfg.highest.is_empty() {
        let mut first = vec![0; rank];
        first[0] = 1;
        vec![first; count]
    } else {
        cfg.highest.clone()
    }
}

/// Runs one suite; `All` runs every suite at small default windows.
pub fn run_checks(check: Check, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    match check {
        Check::Jacobi => {
            let spec = cfg.spec(Family::TauH, 2)?;
            let w = cfg.window(2, spec.n)?;
            out.push(timed(|| verify_jacobi(&spec, &w)));
        }
        Check::Closure => {
            let spec = cfg.spec(Family::TauH, 2)?;
            let w = cfg.window(2, spec.n)?;
            let decs = match cfg.decomposition {
                Some(d) => vec![d],
                None if spec.n == 2 => vec![Decomposition::N2, Decomposition::LevelZero],
                None => vec![Decomposition::GeneralN, Decomposition::LevelZero],
            };
            for d in decs {
                out.push(timed(|| verify_closure(&spec, d, &w)));
            }
        }
        Check::Form => {
            let spec = cfg.spec(Family::TauH, 2)?;
            let w = cfg.window(2, spec.n)?;
            out.push(timed(|| verify_form(&spec, &w)));
        }
        Check::Eala => {
            let spec = cfg.spec(Family::TauH, 2)?;
            let w = cfg.window(1, spec.n)?;
            out.push(timed(|| verify_ea_axioms(&spec, &w)));
        }
        Check::Automorphism => {
            let spec = cfg.spec(Family::FullToroidal, 2)?;
            let n = spec.n;
            let w = cfg.window(2, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut mats = Vec::new();
            if n >= 2 {
                mats.push(shear_matrix(cfg.shear, n / 2, n)?);
            }
            mats.push(random_unimodular(n, 6, &mut rng));
            mats.push(random_unimodular(n, 6, &mut rng));
            for b in &mats {
                out.push(timed(|| {
                    let mut r = verify_homomorphism(&spec, b, &w);
                    r.note(format!("B = {b}"));
                    r
                }));
            }
            if spec.family == Family::TauS {
                for b in &mats {
                    out.push(timed(|| verify_kernel_image(&spec, b, &crate::degree::Window::new(w.radius.min(1), n), 2)));
                }
            }
        }
        Check::Jet => {
            let m = cfg.m.or(cfg.n.map(|n| n / 2)).unwrap_or(1);
            let w = cfg.window(2, 2 * m)?;
            let jet = jet_for(cfg, m, &mut out)?;
            out.push(timed(|| {
                let mut r = verify_jet_module(&jet, &w);
                r.note(format!("profile {}", jet.profile));
                r
            }));
            out.push(timed(|| verify_sp_identity(&jet, &w)));
        }
        Check::Evaluation => {
            let g = cfg.g_datum()?;
            let points = default_points(cfg);
            let highest = default_highest(cfg, points.len(), g.rank);
            let module = EvaluationModule::new(g, points, &highest)?;
            let w = cfg.window(2, module.spec.n)?;
            out.push(timed(|| verify_representation(&module, &w)));
            out.push(timed(|| verify_integrability(&module, &w, 8)));
            out.push(timed(|| module.irreducibility_certificate(&w)));
        }
        Check::Realization => {
            let n = cfg.n.unwrap_or(2);
            if n % 2 != 0 || n == 0 {
                return Err(Error::Config { location: "field N".into(), message: format!("realization needs even N, got {n}") });
            }
            let g = cfg.g_datum()?;
            let highest = cfg.highest.first().cloned().unwrap_or_else(|| {
                let mut h = vec![0; g.rank];
                h[0] = 1;
                h
            });
            let jet = jet_for(cfg, n / 2, &mut out)?;
            let w = cfg.window(1, n)?;
            if cfg.module == Some(ModuleRecipe::Induced) {
                let top = Top::new(g, &highest, jet)?;
                let mut top_rep = top.verify(&crate::degree::Window::new(1, n));
                let t = Instant::now();
                let induced = induced_module(top, cfg.decomposition.unwrap_or(Decomposition::LevelZero), cfg.depth, &w)?;
                let quotient = simple_quotient_window(&induced)?;
                top_rep.note(format!("{}: {:?}", quotient.label, quotient.dims));
                top_rep.timing_ms = Some(t.elapsed().as_millis() as u64);
                out.push(top_rep);
            } else {
                let module = realization_module(g, &highest, jet)?;
                out.push(timed(|| verify_representation(&module, &w)));
                out.push(timed(|| verify_center_trivial(&module, &w)));
                let t = Instant::now();
                let mut top = verify_top_dimension(&module, &w)?;
                top.timing_ms = Some(t.elapsed().as_millis() as u64);
                out.push(top);
            }
        }
        Check::Lambda => {
            let n = cfg.n.unwrap_or(2);
            let w = cfg.window(2, n)?;
            out.push(timed(|| verify_thm91_family(&cfg.lambda, &cfg.mu, &cfg.c, &w)));
            if w.len() * w.len() <= NULLSPACE_UNKNOWN_CAP && w.radius >= 2 && n % 2 == 0 {
                let t = Instant::now();
                let ns = lambda_nullspace(&w, false)?;
                let mut r = verify_lemma_filters(&ns);
                r.note(format!("nullspace dimension {} from {} equations", ns.dim(), ns.equations));
                if !ns.family_contained || ns.family_rank != 3 {
                    r.fail(vec![], format!("constant family rank {} contained={}", ns.family_rank, ns.family_contained));
                }
                r.timing_ms = Some(t.elapsed().as_millis() as u64);
                out.push(r);
            }
        }
        Check::All => {
            let base = RunConfig { seed: cfg.seed, strict: cfg.strict, ..RunConfig::default() };
            let with = |f: &dyn Fn(&mut RunConfig)| {
                let mut c = base.clone();
                f(&mut c);
                c
            };
            let plan: Vec<(Check, RunConfig)> = vec![
                (Check::Jacobi, with(&|c| c.radius = Some(1))),
                (Check::Closure, with(&|c| c.radius = Some(1))),
                (Check::Form, with(&|c| c.radius = Some(1))),
                (Check::Jacobi, with(&|c| {
                    c.family = Some(Family::MinimalEALA);
                    c.radius = Some(1)
                })),
                (Check::Eala, with(&|c| c.radius = Some(1))),
                (Check::Automorphism, with(&|c| c.radius = Some(1))),
                (Check::Jet, with(&|c| c.radius = Some(2))),
                (Check::Evaluation, with(&|c| c.radius = Some(1))),
                (Check::Realization, with(&|c| c.radius = Some(1))),
                (Check::Lambda, with(&|c| c.radius = Some(2))),
            ];
            for (check, c) in plan {
                out.extend(run_checks(check, &c)?);
            }
        }
    }
    Ok(out)
}

pub fn bundle(check: Check, cfg: &RunConfig) -> Result<ReportBundle> {
    let mut config = cfg.echo();
    config.insert("check".into(), format!("{check:?}").to_ascii_lowercase());
    Ok(ReportBundle { config, reports: run_checks(check, cfg)? })
}

pub fn exit_code(bundle: &ReportBundle, strict: bool) -> i32 {
    let failed = bundle
        .reports
        .iter()
        .any(|r| r.status == Status::Fail || (strict && r.status != Status::Pass));
    i32::from(failed)
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match cli.command {
        Command::ReportDiff { a, b } => {
            let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())));
            let result = read(&a).and_then(|x| read(&b).and_then(|y| report_diff(&x, &y)));
            match result {
                Ok(lines) => {
                    for l in &lines {
                        let _ = writeln!(stdout, "{l}");
                    }
                    i32::from(!lines.is_empty())
                }
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    2
                }
            }
        }
        Command::Verify(args) => {
            let result = args.config().and_then(|cfg| bundle(args.check, &cfg).map(|b| (cfg, b)));
            let (cfg, bundle) = match result {
                Ok(x) => x,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return 2;
                }
            };
            if let Some(path) = &cfg.output {
                if let Err(e) = std::fs::write(path, bundle.to_json()) {
                    let _ = writeln!(stderr, "error: {path}: {e}");
                    return 2;
                }
            }
            if args.json {
                let _ = writeln!(stdout, "{}", bundle.to_json());
            } else {
                for r in &bundle.reports {
                    let _ = writeln!(stdout, "{r}");
                }
            }
            exit_code(&bundle, cfg.strict)
        }
    }
}
