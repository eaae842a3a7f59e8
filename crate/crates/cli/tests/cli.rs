use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const CL: &str = r#"{"variant":"CramerLundbergExp","params":{"poisson_intensity":1,"claim_rate":1,"safety_loading":0.5},"x":1}"#;
const GAMMA: &str = r#"{"variant":"GammaRisk","params":{"gamma_shape":2,"gamma_rate":1,"safety_loading":0.5},"x":1}"#;
const STABLE: &str = r#"{"variant":"StableRisk","params":{"stability":1.5},"x":0.5}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in [("cl.json", CL), ("gamma.json", GAMMA), ("stable.json", STABLE)] {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        Workspace { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        self.run_env(args, &[])
    }

    fn run_env(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_drawdown-kit"));
        cmd.current_dir(self.dir.path()).args(args);
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    (header, rows)
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn simpson(ys: &[f64], h: f64) -> f64 {
    let n = ys.len() - 1;
    assert!(n.is_multiple_of(2));
    let inner: f64 = (1..n).map(|i| if i % 2 == 1 { 4.0 * ys[i] } else { 2.0 * ys[i] }).sum();
    h / 3.0 * (ys[0] + ys[n] + inner)
}

#[test]
fn cl_overshoot_density_integrates_to_one() {
    let w = Workspace::new();
    let o = w.run(&["analyze", "--model", "cl.json", "--quantity", "law-overshoot", "--a", "1", "--out", "out"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&w.path("out/law-overshoot.csv"));
    assert_eq!(header, ["y", "density"]);
    let ys: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let h = rows[1][0] - rows[0][0];
    let side = json(&w.path("out/law-overshoot.json"));
    let atoms: f64 = side["atoms"].as_array().unwrap().iter().map(|a| a["weight"].as_f64().unwrap()).sum();
    let mass = simpson(&ys, h) + atoms + side["mass_beyond_grid"].as_f64().unwrap();
    assert!((mass - 1.0).abs() < 1e-6, "{mass}");
    assert!((simpson(&ys, h) - 1.0).abs() < 1e-6);
    let manifest = json(&w.path("out/manifest.json"));
    assert_eq!(manifest["command"], "analyze");
    assert_eq!(manifest["outputs"], serde_json::json!(["law-overshoot.csv", "law-overshoot.json"]));
}

#[test]
fn unknown_quantity_is_a_usage_error() {
    let w = Workspace::new();
    let o = w.run(&["analyze", "--model", "cl.json", "--quantity", "law-speed", "--a", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("possible values"), "{}", stderr(&o));
}

#[test]
fn gamma_transforms_beyond_q_zero_are_out_of_scope() {
    let w = Workspace::new();
    let o = w.run(&["analyze", "--model", "gamma.json", "--quantity", "lt-bivariate", "--a", "1", "--q", "0.5", "--r", "0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("q = 0 only"), "{}", stderr(&o));
    let o = w.run(&["analyze", "--model", "gamma.json", "--quantity", "ruin-before", "--a", "1", "--out", "g"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (_, rows) = read_csv(&w.path("g/ruin-before.csv"));
    assert!((rows[0][2] + rows[0][3] - 1.0).abs() < 1e-15);
}

#[test]
fn invalid_inputs_exit_with_two() {
    let w = Workspace::new();
    std::fs::write(w.path("bad.json"), r#"{"variant":"StableRisk","params":{"stability":2.3}}"#).unwrap();
    for args in [
        vec!["analyze", "--model", "bad.json", "--quantity", "law-max", "--a", "1"],
        vec!["analyze", "--model", "missing.json", "--quantity", "law-max", "--a", "1"],
        vec!["analyze", "--model", "cl.json", "--quantity", "law-max", "--a", "-1"],
        vec!["simulate", "--model", "cl.json", "--a", "1", "--paths", "0"],
        vec!["simulate", "--model", "stable.json", "--a", "1", "--dt", "0"],
        vec!["analyze", "--model", "cl.json", "--quantity", "conditional-laws", "--a", "1", "--x", "0"],
    ] {
        let o = w.run(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
    let o = w.run_env(&["simulate", "--model", "cl.json", "--a", "1", "--paths", "10"], &[("DRAWDOWN_KIT_THREADS", "x")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn numerical_failures_exit_with_three_naming_the_kernel() {
    let w = Workspace::new();
    let o = w.run(&["analyze", "--model", "gamma.json", "--quantity", "ruin-before", "--a", "1", "--tol", "1e-30"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("prob_ruin_before_drawdown"), "{}", stderr(&o));
    let o = w.run(&["simulate", "--model", "cl.json", "--a", "1", "--paths", "100", "--budget", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn simulate_is_reproducible_and_cl_never_creeps() {
    let w = Workspace::new();
    let run = |out: &str, threads: &str| {
        let o = w.run_env(
            &["simulate", "--model", "cl.json", "--a", "1", "--paths", "5000", "--seed", "11", "--out", out],
            &[("DRAWDOWN_KIT_THREADS", threads)],
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        std::fs::read(w.path(out).join("summary.json")).unwrap()
    };
    let first = run("s1", "1");
    assert_eq!(first, run("s2", "1"));
    assert_eq!(first, run("s3", "3"));
    let summary = json(&w.path("s1/summary.json"));
    assert_eq!(summary["continuous_crossings"], 0);
    assert_eq!(summary["grid_step"], serde_json::Value::Null);
    let (header, rows) = read_csv(&w.path("s1/records.csv"));
    assert_eq!(header[0], "tau_a");
    assert_eq!(rows.len(), 5000);
}

#[test]
fn rerun_from_manifest_reproduces_outputs() {
    let w = Workspace::new();
    let o = w.run(&["simulate", "--model", "stable.json", "--a", "1", "--paths", "300", "--seed", "4", "--out", "first"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = w.run(&["analyze", "--model", "cl.json", "--quantity", "lt-bivariate", "--a", "1", "--out", "lt"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    // the model file may change afterwards; the manifest carries the model
    std::fs::write(w.path("stable.json"), r#"{"variant":"StableRisk","params":{"stability":1.8}}"#).unwrap();
    std::fs::write(w.path("cl.json"), "{}").unwrap();
    for (dir, files) in [("first", ["records.csv", "summary.json"]), ("lt", ["lt-bivariate.csv", "lt-bivariate.json"])] {
        let again = format!("{dir}-again");
        let manifest = format!("{dir}/manifest.json");
        let o = w.run(&["rerun", &manifest, "--out", &again]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        for f in files {
            assert_eq!(std::fs::read(w.path(dir).join(f)).unwrap(), std::fs::read(w.path(&again).join(f)).unwrap(), "{f}");
        }
    }
}

#[test]
fn compare_passes_for_cl_overshoot() {
    let w = Workspace::new();
    let o = w.run(&["compare", "--model", "cl.json", "--quantity", "law-overshoot", "--a", "1", "--paths", "100000", "--out", "c"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let (header, _) = {
        let mut r = csv::Reader::from_path(w.path("c/compare.csv")).unwrap();
        (r.headers().unwrap().clone(), ())
    };
    assert_eq!(header.iter().collect::<Vec<_>>(), ["check", "analytic", "monte_carlo", "std_error", "z", "pass"]);
}

#[test]
fn compare_prints_the_exact_stable_row() {
    let w = Workspace::new();
    let o = w.run(&["compare", "--model", "stable.json", "--quantity", "law-max", "--a", "1", "--paths", "2000"]);
    let out = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{out}");
    let row = out.lines().find(|l| l.starts_with("lambda(a,0)*a = alpha-1")).unwrap();
    assert!(row.contains("exact") && row.ends_with("pass"), "{row}");
}

#[test]
fn compare_detects_a_mismatched_model() {
    let w = Workspace::new();
    let args = ["compare", "--model", "cl.json", "--quantity", "ruin-before", "--a", "1", "--paths", "20000", "--out", "bad"];
    let o = w.run(&[&args[..], &["--sim-loading", "0.8"]].concat());
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(stderr(&o).contains("P(ruin before drawdown)"));
    assert!(w.path("bad/manifest.json").exists());
    let o = w.run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}
