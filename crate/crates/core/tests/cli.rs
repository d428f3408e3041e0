//! CLI surface tests: argument validation, exit codes, cache environment,
//! and file outputs.

use std::process::Command;

use num_complex::Complex64;

use gronwall::bottcher;
use gronwall::experiments::cache_file_name;

const BIN: &str = env!("CARGO_BIN_EXE_gronwall");

struct CliRun {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run(args: &[&str], cache_dir: Option<&std::path::Path>) -> CliRun {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    match cache_dir {
        Some(dir) => {
            cmd.env("GRONWALL_CACHE_DIR", dir);
        }
        None => {
            cmd.env_remove("GRONWALL_CACHE_DIR");
        }
    }
    let out = cmd.output().expect("binary runs");
    CliRun {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

#[test]
fn invalid_arguments_exit_with_2() {
    // Domain error: radius below 1.
    let r = run(&["area", "--c", "0,0", "--r", "0.5", "--n", "4"], None);
    assert_eq!(r.code, 2, "stderr: {}", r.stderr);
    // Malformed complex literal.
    let r = run(&["area", "--c", "zzz", "--r", "1", "--n", "4"], None);
    assert_eq!(r.code, 2);
    // Missing level for a green region.
    let r = run(
        &["pixel-area", "--region", "green", "--lambda", "0,0", "--resolution", "64", "--max-iter", "10"],
        None,
    );
    assert_eq!(r.code, 2, "stderr: {}", r.stderr);
    // Unknown subcommand (clap's own exit code).
    let r = run(&["frobnicate"], None);
    assert_eq!(r.code, 2);
}

#[test]
fn budget_refusal_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let r = run(
        &["sweep", "--t0", "0", "--t1", "0.5", "--steps", "3", "--levels", "1,60000",
          "--out", out.to_str().unwrap()],
        None,
    );
    assert_eq!(r.code, 3, "stderr: {}", r.stderr);
    assert!(r.stderr.contains("budget"));
    assert!(!out.exists(), "refused run must not write output");
}

#[test]
fn coeffs_out_writes_a_loadable_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.coeff");
    let r = run(
        &["coeffs", "--c", "-1,0", "--n", "16", "--out", path.to_str().unwrap()],
        None,
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let table = bottcher::read_table(&path, None).unwrap();
    assert_eq!(table.order(), 16);
    assert_eq!(table.coefficient(1), Complex64::new(0.5, 0.0));
    assert_eq!(table.coefficient(3), Complex64::new(0.125, 0.0));
}

#[test]
fn cache_env_var_creates_and_reuses_files() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(&["coeffs", "--c", "-0.75,0", "--n", "32"], Some(dir.path()));
    assert_eq!(first.code, 0, "stderr: {}", first.stderr);
    let cached = dir.path().join(cache_file_name(Complex64::new(-0.75, 0.0)));
    assert!(cached.exists(), "expected {}", cached.display());

    let second = run(&["coeffs", "--c", "-0.75,0", "--n", "32"], Some(dir.path()));
    assert_eq!(second.code, 0);
    assert_eq!(first.stdout, second.stdout, "cache read changed the output");

    // A shorter request must not shrink the stored table.
    let _ = run(&["coeffs", "--c", "-0.75,0", "--n", "8"], Some(dir.path()));
    let (_, stored) = bottcher::stored_header(&cached).unwrap();
    assert_eq!(stored, 32);
}

#[test]
fn pixel_area_writes_pgm_and_reports_interval() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("disk.pgm");
    let r = run(
        &["pixel-area", "--region", "julia", "--lambda", "0,0",
          "--resolution", "64", "--max-iter", "60", "--pgm", pgm.to_str().unwrap()],
        None,
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    for key in ["value = ", "lower = ", "upper = ", "undecided = ", "resolution = 64"] {
        assert!(r.stdout.contains(key), "missing `{key}` in: {}", r.stdout);
    }
    let bytes = std::fs::read(&pgm).unwrap();
    assert!(bytes.starts_with(b"P5\n64 64\n255\n"));
    assert_eq!(bytes.len(), "P5\n64 64\n255\n".len() + 64 * 64);
}

#[test]
fn iter_region_requires_p_and_radius() {
    let r = run(
        &["pixel-area", "--region", "iter", "--lambda", "0,0", "--p", "1",
          "--resolution", "64", "--max-iter", "10"],
        None,
    );
    assert_eq!(r.code, 2);
    let r = run(
        &["pixel-area", "--region", "iter", "--lambda", "0,0", "--p", "1", "--radius", "12",
          "--resolution", "64", "--max-iter", "10"],
        None,
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
}

#[test]
fn parabolic_emits_the_documented_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let r = run(
        &["parabolic", "--m", "8", "--tau", "0", "--gamma", "0.25", "--radius", "12",
          "--resolution", "256", "--max-iter", "400", "--out", out.to_str().unwrap()],
        None,
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for key in ["alpha", "m", "tau", "gamma", "N", "A_1N", "area_K_lambda", "area_K_1", "iter_area", "measured_gap"] {
        assert!(json.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(json["m"], 8);
    let gap = json["A_1N"].as_f64().unwrap() - json["area_K_lambda"]["value"].as_f64().unwrap();
    assert!((json["measured_gap"].as_f64().unwrap() - gap).abs() < 1e-12);
}

#[test]
fn lavaurs_prints_a_complex_pair() {
    let r = run(&["lavaurs", "--m", "32", "--tau", "0", "--z", "-0.5,0"], None);
    assert_eq!(r.code, 0);
    let parts: Vec<f64> = r
        .stdout
        .split_whitespace()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(parts.len(), 2);
    let image = Complex64::new(parts[0], parts[1]);
    assert!((image - Complex64::new(-0.4671240330573926, -0.020237441793028332)).norm() < 1e-12);
}

#[test]
fn double_mandelbrot_writes_window_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("window.pgm");
    let r = run(
        &["double-mandelbrot", "--resolution", "120", "--max-iter", "60",
          "--pgm", pgm.to_str().unwrap()],
        None,
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let bytes = std::fs::read(&pgm).unwrap();
    assert!(bytes.starts_with(b"P5\n120 80\n255\n"));
}

#[test]
fn fast_engine_flag_is_accepted_and_consistent() {
    let naive = run(&["area", "--c", "-1,0", "--r", "1", "--n", "2048"], None);
    let fast = run(&["area", "--c", "-1,0", "--r", "1", "--n", "2048", "--fast"], None);
    assert_eq!(naive.code, 0);
    assert_eq!(fast.code, 0);
    let a: f64 = naive.stdout.split_whitespace().last().unwrap().parse().unwrap();
    let b: f64 = fast.stdout.split_whitespace().last().unwrap().parse().unwrap();
    assert!((a - b).abs() < 1e-9, "engines disagree: {a} vs {b}");
}
