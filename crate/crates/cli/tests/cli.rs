use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn prandtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prandtl")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn solve_elliptic_case() {
    let tmp = TempDir::new().unwrap();
    let config = write_config(
        tmp.path(),
        r#"{"command":"solve","coefficient":{"kind":"elliptic","p0":2.0},"rhs":{"kind":"one"}}"#,
    );
    let out = tmp.path().join("out");
    let o = prandtl(&["solve", "--config", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    for name in ["solution.csv", "spectrum.csv", "report.txt", "report.json"] {
        assert!(out.join(name).is_file(), "{name} missing");
    }

    // u = A √(1 - x²) with A = 1; the L = 12 truncation limits agreement
    let csv = fs::read_to_string(out.join("solution.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("j,omega,x,u_real,u_imag,u_prime_weighted"));
    let mut rows = 0;
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let x = v[2];
        assert!((v[3] - (1.0 - x * x).sqrt()).abs() < 5e-5, "x = {x}: {}", v[3]);
        assert!(v[4].abs() < 1e-12);
        rows += 1;
    }
    assert_eq!(rows, 4096);

    let report = fs::read_to_string(out.join("report.txt")).unwrap();
    let bound_rows: Vec<&str> = report.lines().skip_while(|l| !l.starts_with("bound")).skip(1).collect();
    assert_eq!(bound_rows.len(), 7);
    assert!(bound_rows.iter().all(|l| l.trim_end().ends_with("yes")), "{report}");

    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    for key in ["norms", "bounds", "iterations", "residual", "spectral_tail", "grid"] {
        assert!(json.get(key).is_some(), "report.json lacks {key}");
    }
    assert_eq!(json["grid"]["n"], 4096);
    assert_eq!(json["grid"]["L"], 12.0);
    let bound = &json["bounds"][0];
    for key in ["name", "lhs", "rhs", "pass"] {
        assert!(bound.get(key).is_some());
    }
}

#[test]
fn solve_output_is_deterministic() {
    let tmp = TempDir::new().unwrap();
    let config = write_config(
        tmp.path(),
        r#"{"coefficient":{"kind":"triangular","p0":1.0},"rhs":{"kind":"cosine"},"grid":{"n":1024,"L":10}}"#,
    );
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let o = prandtl(&["solve", "--config", &config, "--out", dir.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    for name in ["solution.csv", "spectrum.csv"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    let spectrum = fs::read_to_string(a.join("spectrum.csv")).unwrap();
    assert!(spectrum.starts_with("k,xi,U_real,U_imag,multiplier\n"));
}

#[test]
fn output_directory_from_config() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("from-config");
    let config = write_config(
        tmp.path(),
        &format!(r#"{{"grid":{{"n":512}},"output":{}}}"#, serde_json::to_string(out.to_str().unwrap()).unwrap()),
    );
    let o = prandtl(&["solve", "--config", &config]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(out.join("report.json").is_file());
}

#[test]
fn config_errors_exit_with_2() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    for (text, needle) in [
        (r#"{"grid":{"n":1000}}"#, "n must be a power of two"),
        (r#"{"grid":{"n":4096},"extra":1}"#, "unknown field"),
        ("{\"grid\": {\"n\": 4096,}}", "line 1, column"),
        (r#"{"coefficient":{"kind":"constant","p0":1.0,"M":0.5}}"#, "M"),
    ] {
        let config = write_config(tmp.path(), text);
        let o = prandtl(&["solve", "--config", &config, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}: {}", stderr(&o));
        assert!(stderr(&o).contains(needle), "{text}: {}", stderr(&o));
    }
    let config = write_config(tmp.path(), "{}");
    let o = prandtl(&["solve", "--config", &config]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no output directory"));
}

#[test]
fn convergence_failure_exits_with_3() {
    let tmp = TempDir::new().unwrap();
    let config = write_config(
        tmp.path(),
        r#"{"coefficient":{"kind":"triangular","p0":1.0},"grid":{"n":512},"solver":{"max_iter":1}}"#,
    );
    let out = tmp.path().join("out");
    let o = prandtl(&["solve", "--config", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn io_failures_exit_with_5() {
    let tmp = TempDir::new().unwrap();
    let missing = tmp.path().join("nope.json");
    let o = prandtl(&["solve", "--config", missing.to_str().unwrap(), "--out", "x"]);
    assert_eq!(o.status.code(), Some(5));

    // a regular file where a directory component is expected
    let blocker = tmp.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let config = write_config(tmp.path(), r#"{"grid":{"n":256}}"#);
    let out = blocker.join("out");
    let o = prandtl(&["solve", "--config", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5), "{}", stderr(&o));
    assert!(stderr(&o).contains("I/O error"));
}

#[test]
fn transform_diagnostics() {
    let tmp = TempDir::new().unwrap();
    let config = write_config(tmp.path(), r#"{"grid":{"n":8192,"L":24}}"#);
    let out = tmp.path().join("t");
    let o = prandtl(&["transform", "--function", "sech", "--config", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let stdout = String::from_utf8(o.stdout).unwrap();
    let closed: f64 = stdout
        .lines()
        .find(|l| l.starts_with("closed form max error"))
        .and_then(|l| l.split_whitespace().last())
        .unwrap()
        .parse()
        .unwrap();
    assert!(closed < 1e-9);
    let csv = fs::read_to_string(out.join("transform.csv")).unwrap();
    assert!(csv.starts_with("k,xi,U_real,U_imag,U_exact\n"));
    assert_eq!(csv.lines().count(), 8193);

    let o = prandtl(&["transform", "--function", "cosine"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_quick_passes() {
    let o = prandtl(&["verify", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.contains(" PASS ")).count(), 11, "{stdout}");
}
