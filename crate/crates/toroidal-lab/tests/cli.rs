use toroidal_lab::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toroidal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn lambda_verb_exit_codes() {
    let (code, out, _) = call(&["verify", "lambda", "--N", "2", "--radius", "2", "--lam", "2", "--mu", "4", "--c", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("lambda-family") && out.contains("pass"));
    let (code, out, _) = call(&["verify", "lambda", "--lam", "1", "--mu", "1", "--c", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("1/2"), "{out}");
}

#[test]
fn config_errors_exit_two() {
    let (code, _, err) = call(&["verify", "jacobi", "--radius", "9"]);
    assert_eq!(code, 2);
    assert!(err.contains("--unsafe-large"), "{err}");
    let (code, _, err) = call(&["verify", "jacobi", "--family", "tauH", "--N", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("even"), "{err}");
    let (code, _, _) = call(&["verify", "nonsense"]);
    assert_eq!(code, 2);
    let dir = std::env::temp_dir().join(format!("toroidal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.conf");
    std::fs::write(&cfg, "family = tauH\nradius = two\n").unwrap();
    let (code, _, err) = call(&["verify", "jacobi", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2") && err.contains("radius"), "{err}");
}

#[test]
fn config_file_with_flag_override_and_strict() {
    let dir = std::env::temp_dir().join(format!("toroidal-cli-ok-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "[algebra]\nfamily = tauH\nN = 2\nradius = 4\n").unwrap();
    let (code, out, _) = call(&["verify", "closure", "--config", cfg.to_str().unwrap(), "--radius", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("R=1"));
    let (code, out, _) = call(&["verify", "eala", "--radius", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("partial"));
    let (code, _, _) = call(&["verify", "eala", "--radius", "1", "--strict"]);
    assert_eq!(code, 1);
}

#[test]
fn report_diff_on_perturbed_profile() {
    let dir = std::env::temp_dir().join(format!("toroidal-cli-diff-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let c = dir.join("c.json");
    let good = "1,1/2,1/2,1/2,1/2,1/2";
    let bad = "2,1,1,1,1,1";
    assert_eq!(call(&["verify", "jet", "--profile", good, "--output", a.to_str().unwrap()]).0, 0);
    assert_eq!(call(&["verify", "jet", "--profile", good, "--output", b.to_str().unwrap()]).0, 0);
    assert_eq!(call(&["verify", "jet", "--profile", bad, "--output", c.to_str().unwrap()]).0, 1);
    let (code, out, _) = call(&["report-diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let (code, out, _) = call(&["report-diff", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("witnesses"), "{out}");
    std::fs::write(&c, "not json").unwrap();
    assert_eq!(call(&["report-diff", a.to_str().unwrap(), c.to_str().unwrap()]).0, 2);
}
