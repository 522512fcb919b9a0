use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use prandtl_core::operators::MultiplierTable;
use prandtl_core::ptransform::{derivative_image, forward, inverse, pairing, spectral_pairing};
use prandtl_core::solver::{solve_weak, ProblemSpec, SolveReport};
use prandtl_core::verify::{format_table, run_suite};
use prandtl_core::{sample_omega, GridFunction, OmegaGrid, SpectralFunction};

use crate::config::RunConfig;
use crate::error::{io_error, CliError};

/// Formats with 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io_error(&path, e))?;
    Ok(path)
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}

pub fn read_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    crate::config::parse_config(&text)
}

fn output_dir(config: &RunConfig, out: Option<PathBuf>) -> Result<PathBuf, CliError> {
    out.or_else(|| config.output.clone())
        .ok_or_else(|| CliError::Config("no output directory: pass --out or set \"output\"".into()))
}

pub fn solution_csv(u: &GridFunction) -> String {
    let grid = u.grid();
    let du = inverse(&derivative_image(&forward(u)));
    let mut s = String::from("j,omega,x,u_real,u_imag,u_prime_weighted\n");
    for j in 0..grid.n() {
        let v = u.values()[j];
        let _ = writeln!(
            s,
            "{j},{},{},{},{},{}",
            num(grid.omega(j)),
            num(grid.x(j)),
            num(v.re),
            num(v.im),
            num(du.values()[j].re)
        );
    }
    s
}

pub fn spectrum_csv(big_u: &SpectralFunction) -> String {
    let table = MultiplierTable::new(*big_u.grid());
    let mut s = String::from("k,xi,U_real,U_imag,multiplier\n");
    for (k, v) in big_u.values().iter().enumerate() {
        let _ = writeln!(s, "{k},{},{},{},{}", num(big_u.grid().xi(k)), num(v.re), num(v.im), num(table.values()[k]));
    }
    s
}

fn report_text(config: &RunConfig, report: &SolveReport) -> String {
    let mut s = String::new();
    let _ =
        writeln!(s, "{:<22} {} (M = {})", "coefficient", config.coefficient.kind(), num(config.coefficient.bound()));
    let _ = writeln!(s, "{:<22} {}", "rhs", config.rhs.label());
    let _ = writeln!(s, "{:<22} n = {}, L = {}", "grid", report.grid.n, report.grid.half_width);
    let _ = writeln!(s, "{:<22} {}", "iterations", report.iterations);
    let _ = writeln!(s, "{:<22} {}", "residual", num(report.residual));
    let _ = writeln!(s, "{:<22} {}", "energy monotone", report.energy_monotone);
    let _ = writeln!(s, "{:<22} {}", "coercivity ratio", num(report.coercivity_ratio));
    let warn = if report.spectral_tail_warning { "  WARNING: under-resolved" } else { "" };
    let _ = writeln!(s, "{:<22} {}{warn}", "spectral tail", num(report.spectral_tail));
    let _ = writeln!(s);
    let n = &report.norms;
    for (name, v) in [("l2_tilde", n.l2_tilde), ("h_half", n.h_half), ("h_one", n.h_one), ("f_l2r", n.f_l2r)] {
        let _ = writeln!(s, "{name:<22} {}", num(v));
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<22} {:>24} {:>24} {:>12} {:>5}", "bound", "lhs", "rhs", "ratio", "pass");
    for b in &report.bounds {
        let _ = writeln!(
            s,
            "{:<22} {:>24} {:>24} {:>12.6} {:>5}",
            b.name,
            num(b.lhs),
            num(b.rhs),
            b.ratio,
            if b.pass { "yes" } else { "NO" }
        );
    }
    s
}

#[derive(Serialize)]
struct JsonReport<'a> {
    coefficient: &'a str,
    #[serde(rename = "M")]
    bound: f64,
    rhs: String,
    #[serde(flatten)]
    report: &'a SolveReport,
}

/// `solve`: writes solution.csv, spectrum.csv, report.txt and report.json.
pub fn solve(config: &RunConfig, out: Option<PathBuf>) -> Result<String, CliError> {
    let dir = output_dir(config, out)?;
    let spec = ProblemSpec::new(config.coefficient.clone(), config.rhs.clone(), config.grid)
        .with_tol(config.tol)
        .with_max_iter(config.max_iter);
    let (u, report) = solve_weak(&spec)?;

    prepare_dir(&dir)?;
    write_file(&dir, "solution.csv", &solution_csv(&u))?;
    write_file(&dir, "spectrum.csv", &spectrum_csv(&forward(&u)))?;
    let text = report_text(config, &report);
    write_file(&dir, "report.txt", &text)?;
    let json = JsonReport {
        coefficient: config.coefficient.kind(),
        bound: config.coefficient.bound(),
        rhs: config.rhs.label(),
        report: &report,
    };
    let json = serde_json::to_string_pretty(&json).map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&dir, "report.json", &(json + "\n"))?;

    if !report.bounds_pass() {
        let failed: Vec<&str> = report.bounds.iter().filter(|b| !b.pass).map(|b| b.name.as_str()).collect();
        return Err(CliError::Verification(format!("bounds violated: {}", failed.join(", "))));
    }
    Ok(text)
}

/// Test functions with closed-form transforms, given as `u₁(ω)` and `U(ξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TestFunction {
    /// `√(1-x²) = sech ω`, transform `π sech(πξ)`
    Sech,
    /// `1 - x² = sech² ω`, transform `2πξ / sinh(πξ)`
    Sech2,
    /// `exp(-artanh² x)`, transform `√π exp(-ξ²)`
    Gaussian,
}

impl TestFunction {
    fn eval(self, w: f64) -> f64 {
        match self {
            TestFunction::Sech => 1.0 / w.cosh(),
            TestFunction::Sech2 => 1.0 / w.cosh().powi(2),
            TestFunction::Gaussian => (-w * w).exp(),
        }
    }

    fn exact(self, xi: f64) -> f64 {
        // written with e^{-π|ξ|} so nothing overflows at large |ξ|
        let e = (-PI * xi.abs()).exp();
        match self {
            TestFunction::Sech => PI * 2.0 * e / (1.0 + e * e),
            TestFunction::Sech2 if xi == 0.0 => 2.0,
            TestFunction::Sech2 => 4.0 * PI * xi.abs() * e / -(-2.0 * PI * xi.abs()).exp_m1(),
            TestFunction::Gaussian => PI.sqrt() * (-xi * xi).exp(),
        }
    }
}

/// `transform`: forward/inverse round trip, Parseval and closed-form
/// comparison for one test function.
pub fn transform(function: TestFunction, grid: OmegaGrid, out: Option<PathBuf>) -> Result<String, CliError> {
    let u = sample_omega(|w| function.eval(w), &grid)?;
    let big_u = forward(&u);
    let back = inverse(&big_u);
    let round_trip = u.values().iter().zip(back.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let lhs = pairing(&u, &u)?.re;
    let parseval = (lhs - spectral_pairing(&big_u, &big_u)?.re).abs() / lhs;
    let exact_err = big_u
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| (v.re - function.exact(big_u.grid().xi(k))).abs().max(v.im.abs()))
        .fold(0.0, f64::max);

    let mut summary = String::new();
    let _ = writeln!(summary, "{:<28} {:?}", "function", function);
    let _ = writeln!(summary, "{:<28} n = {}, L = {}", "grid", grid.n(), grid.half_width());
    let _ = writeln!(summary, "{:<28} {}", "round trip max error", num(round_trip));
    let _ = writeln!(summary, "{:<28} {}", "Parseval relative error", num(parseval));
    let _ = writeln!(summary, "{:<28} {}", "closed form max error", num(exact_err));

    if let Some(dir) = out {
        prepare_dir(&dir)?;
        let mut csv = String::from("k,xi,U_real,U_imag,U_exact\n");
        for (k, v) in big_u.values().iter().enumerate() {
            let xi = big_u.grid().xi(k);
            let _ = writeln!(csv, "{k},{},{},{},{}", num(xi), num(v.re), num(v.im), num(function.exact(xi)));
        }
        write_file(&dir, "transform.csv", &csv)?;
        write_file(&dir, "transform.txt", &summary)?;
    }
    Ok(summary)
}

/// `verify`: the self-verification table; fails if any check fails.
pub fn verify(quick: bool) -> Result<String, CliError> {
    let outcomes = run_suite(quick);
    let table = format_table(&outcomes);
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.to_string()).collect();
    if failed.is_empty() {
        Ok(table)
    } else {
        print!("{table}");
        Err(CliError::Verification(format!("checks {} failed", failed.join(", "))))
    }
}
