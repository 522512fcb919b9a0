//! Self-verification suite.
//!
//! Each check pits the transform path against something computed another
//! way: closed forms, the principal-value quadrature, the Glauert series, or
//! the a-priori estimates. Checks never panic; a failed computation is
//! reported as a failed check with the error in `detail`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::grid::{sample_omega, sech, GridFunction, OmegaGrid};
use crate::operators::{apply_prandtl_pv, apply_prandtl_spectral, glauert_apply, multiplier, verify_coth_image};
use crate::operators::{GlauertExpansion, MultiplierTable};
use crate::ptransform::{forward, pairing, spectral_pairing};
use crate::solver::{
    boundary_decay, solve_glauert, solve_weak, CoefficientSpec, ProblemSpec, RightHandSide, SolveReport,
};
use crate::spaces::{embedding_constant, hs_norm, l2_tilde_norm};

/// Default resolution for the preset matrix.
pub const DEFAULT_N: usize = 4096;
pub const DEFAULT_L: f64 = 12.0;
/// Wide grid for checks against closed forms: the same step as the default
/// grid but with the `sech(L)` truncation pushed below `1e-10`.
pub const WIDE_N: usize = 8192;
pub const WIDE_L: f64 = 24.0;

const RANDOM_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(id: u32, name: &'static str, result: Result<(bool, String)>) -> Self {
        match result {
            Ok((passed, detail)) => Self { id, name, passed, detail },
            Err(e) => Self { id, name, passed: false, detail: format!("error: {e}") },
        }
    }

    pub fn line(&self) -> String {
        format!("{} [{:>2}] {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

fn default_grid() -> OmegaGrid {
    OmegaGrid::new(DEFAULT_N, DEFAULT_L).expect("valid default grid")
}

fn wide_grid() -> OmegaGrid {
    OmegaGrid::new(WIDE_N, WIDE_L).expect("valid wide grid")
}

/// `sech x` without overflow for large `x`.
fn sech_stable(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// `x / sinh x` without overflow, `1` at `0`.
fn x_over_sinh(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let a = x.abs();
    let e = (-a).exp();
    2.0 * a * e / (1.0 - e * e)
}

/// `u = √(1 - x²)` is mapped to `(1 - x²)/2` at every node, and
/// `m(ξ)·π sech(πξ) = πξ/sinh(πξ)` at every spectral node.
pub fn check_multiplier_identity() -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let g = wide_grid();
        let u = sample_omega(sech, &g)?;
        let k = apply_prandtl_spectral(&u);
        let node_err =
            (0..g.n()).map(|j| (k.values()[j] - Complex64::from(0.5 * g.weight(j))).norm()).fold(0.0, f64::max);
        let s = g.spectral();
        let symbol_err = s
            .xis()
            .map(|xi| {
                let lhs = multiplier(xi) * PI * sech_stable(PI * xi);
                let rhs = x_over_sinh(PI * xi);
                if lhs == rhs {
                    0.0
                } else {
                    (lhs - rhs).abs() / rhs.abs()
                }
            })
            .fold(0.0, f64::max);
        let passed = node_err <= 1e-8 && symbol_err <= 1e-10;
        Ok((
            passed,
            format!("max node error {node_err:.2e} (≤ 1e-8), symbol relative error {symbol_err:.2e} (≤ 1e-10)"),
        ))
    };
    CheckOutcome::new(1, "multiplier identity", run())
}

/// Principal-value quadrature of the coth kernel against `-iπ coth(πξ)`.
pub fn check_coth_image() -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let mut worst = 0.0_f64;
        let mut parts = Vec::new();
        for xi in [0.5, 1.0, 2.0] {
            let v = verify_coth_image(xi)?;
            let e = (2.0 * PI * xi).exp();
            let exact = Complex64::new(0.0, -PI * (e + 1.0) / (e - 1.0));
            let err = (v - exact).norm();
            worst = worst.max(err);
            parts.push(format!("ξ={xi}: {:.7}i", v.im));
        }
        Ok((worst <= 1e-6, format!("{}; max error {worst:.2e} (≤ 1e-6)", parts.join(", "))))
    };
    CheckOutcome::new(2, "coth image", run())
}

fn sech_family(a: f64, b: f64, c: f64, tilt: f64) -> impl Fn(f64) -> f64 {
    move |w: f64| c * sech(a * (w - b)) * (1.0 + tilt * w.tanh())
}

/// `h Σ u ḡ = (Δξ/π) Σ U Ḡ` on sech-family pairs, and `∫ (1 - x²) dx/(1 - x²) = 2`.
pub fn check_parseval() -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let g = default_grid();
        let family = [
            sample_omega(sech_family(1.0, 0.0, 1.0, 0.0), &g)?,
            sample_omega(sech_family(2.0, 0.7, 0.5, 0.3), &g)?,
            sample_omega(sech_family(1.5, -1.2, 1.3, -0.6), &g)?,
            sample_omega(sech_family(3.0, 2.0, 0.8, 0.9), &g)?,
        ];
        let mut worst = 0.0_f64;
        for u in &family {
            for v in &family {
                let lhs = pairing(u, v)?;
                let rhs = spectral_pairing(&forward(u), &forward(v))?;
                let scale = pairing(u, u)?.re.sqrt() * pairing(v, v)?.re.sqrt();
                worst = worst.max((lhs - rhs).norm() / scale);
            }
        }
        let root = pairing(&family[0], &family[0])?.re;
        let passed = worst <= 1e-10 && (root - 2.0).abs() <= 1e-9;
        Ok((passed, format!("max relative error {worst:.2e} (≤ 1e-10), (√(1-x²), √(1-x²)) = {root:.12}")))
    };
    CheckOutcome::new(3, "Parseval", run())
}

/// Spectral operator, PV quadrature and Glauert eigen-relation on
/// `sin nθ`, `n ≤ 8`, at the 25 nodes nearest `cos(kπ/26)`.
pub fn check_triangulation() -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let g = wide_grid();
        let nodes: Vec<usize> =
            (1..=25).map(|k| g.nearest_node((k as f64 * PI / 26.0).cos())).collect::<Result<_>>()?;

        // eigenvalue of sin θ first, from the quadrature alone
        let one = GlauertExpansion::mode(1);
        let lambda = apply_prandtl_pv(|t| one.eval_x(t), |t| one.derivative_x(t), 0.3)?;
        if (lambda - 0.5).abs() > 1e-9 {
            return Ok((false, format!("PV quadrature gives λ₁ = {lambda}, expected 1/2")));
        }

        let mut worst = [0.0_f64; 3];
        for n in 1..=8 {
            let e = GlauertExpansion::mode(n);
            let spectral = apply_prandtl_spectral(&e.sample(&g));
            for &j in &nodes {
                let x = g.x(j);
                let theta = crate::operators::glauert::theta_of_omega(g.omega(j));
                let s = spectral.values()[j].re / g.weight(j);
                let p = apply_prandtl_pv(|t| e.eval_x(t), |t| e.derivative_x(t), x)?;
                let gl = glauert_apply(&e, theta)?;
                worst[0] = worst[0].max((s - p).abs());
                worst[1] = worst[1].max((s - gl).abs());
                worst[2] = worst[2].max((p - gl).abs());
            }
        }
        let max = worst.iter().copied().fold(0.0, f64::max);
        Ok((
            max <= 1e-6,
            format!(
                "λ₁ = {lambda:.12}; spectral-PV {:.2e}, spectral-Glauert {:.2e}, PV-Glauert {:.2e} (≤ 1e-6)",
                worst[0], worst[1], worst[2]
            ),
        ))
    };
    CheckOutcome::new(4, "oracle triangulation", run())
}

/// `V = 1/(2√(1-x²))`, `f ≡ 1`: the solution is `A √(1-x²)` with
/// `A = 1/(1/p0 + λ₁)`, `λ₁` the PV eigenvalue of `√(1-x²)`.
pub fn check_elliptic() -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let p0 = 2.0;
        let root = GlauertExpansion::mode(1);
        let lambda = apply_prandtl_pv(|t| root.eval_x(t), |t| root.derivative_x(t), -0.45)?;
        if (lambda - 0.5).abs() > 1e-9 {
            return Ok((false, format!("PV quadrature gives λ₁ = {lambda}, expected 1/2")));
        }
        let amplitude = 1.0 / (1.0 / p0 + 0.5);

        let g = wide_grid();
        let spec = ProblemSpec::new(CoefficientSpec::elliptic(p0)?, RightHandSide::One, g);
        let (u, _) = solve_weak(&spec)?;
        let deviation = (0..g.n())
            .map(|j| (u.values()[j] - Complex64::from(amplitude * sech(g.omega(j)))).norm())
            .fold(0.0, f64::max);

        let oracle = solve_glauert(&spec, 8)?;
        let projected = GlauertExpansion::project(&u, 8);
        let coeff_err =
            oracle.coefficients().iter().zip(projected.coefficients()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        Ok((
            deviation <= 1e-6 && coeff_err <= 1e-8,
            format!(
                "A = {amplitude}, max deviation {deviation:.2e} (≤ 1e-6), Glauert A₁ = {:.12}, coefficient mismatch {coeff_err:.2e} (≤ 1e-8)",
                oracle.coefficients()[0]
            ),
        ))
    };
    CheckOutcome::new(5, "elliptic closed form", run())
}

/// One solved entry of the preset matrix.
#[derive(Debug, Clone)]
pub struct MatrixCase {
    pub label: String,
    pub solution: GridFunction,
    pub report: SolveReport,
}

/// The preset matrix {elliptic p0=2, constant p0=1, triangular p0=1} ×
/// {1, cos(πx/2), (1-x²)^{0.1}} on the default grid.
pub fn preset_matrix() -> Result<Vec<MatrixCase>> {
    let coefficients =
        [CoefficientSpec::elliptic(2.0)?, CoefficientSpec::constant(1.0)?, CoefficientSpec::triangular(1.0)?];
    let rhs = [RightHandSide::One, RightHandSide::cosine(), RightHandSide::Power { exponent: 0.1 }];
    let mut cases = Vec::new();
    for c in &coefficients {
        for f in &rhs {
            let spec = ProblemSpec::new(c.clone(), f.clone(), default_grid());
            let (solution, report) = solve_weak(&spec)?;
            cases.push(MatrixCase { label: format!("{}/{}", c.kind(), f.label()), solution, report });
        }
    }
    Ok(cases)
}

fn bound_check(id: u32, name: &'static str, cases: &Result<Vec<MatrixCase>>, bounds: &[&str]) -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let cases = cases.as_ref().map_err(Clone::clone)?;
        let mut passed = true;
        let mut worst: Vec<(f64, String)> = bounds.iter().map(|_| (0.0, String::new())).collect();
        for case in cases {
            for (i, name) in bounds.iter().enumerate() {
                let b = case
                    .report
                    .bounds
                    .iter()
                    .find(|b| b.name == *name)
                    .ok_or_else(|| Error::Spec(format!("bound {name} missing from report")))?;
                passed &= b.pass;
                if b.ratio >= worst[i].0 {
                    worst[i] = (b.ratio, case.label.clone());
                }
            }
        }
        let detail = bounds
            .iter()
            .zip(&worst)
            .map(|(n, (r, l))| format!("{n}: max lhs/rhs {r:.4} ({l})"))
            .collect::<Vec<_>>()
            .join("; ");
        Ok((passed, format!("{} cases; {detail}", cases.len())))
    };
    CheckOutcome::new(id, name, run())
}

/// `‖u‖_{H_{1/2}} ≤ π ‖f‖_{L₂,r}`.
pub fn check_weak_bound(cases: &Result<Vec<MatrixCase>>) -> CheckOutcome {
    bound_check(6, "weak solution bound", cases, &["weak_h_half"])
}

/// `‖u‖²_{H_1} ≤ C₂ ‖f‖²_{L₂,r}` and `∫V|u|² ≤ (π/4)‖f‖²_{L₂,r}`.
pub fn check_strong_bound(cases: &Result<Vec<MatrixCase>>) -> CheckOutcome {
    bound_check(7, "strong solution bound", cases, &["strong_h1_squared", "potential"])
}

/// `‖u‖_{H_{3/4}} ≤ π^{1/2} C₂^{1/4} ‖f‖_{L₂,r}`.
pub fn check_interpolation_bound(cases: &Result<Vec<MatrixCase>>) -> CheckOutcome {
    bound_check(8, "interpolated bound", cases, &["interpolated_h0.75"])
}

/// `max|u| ≤ 2^{-1/2} ‖u‖_{H_1}` on the solved cases and on random
/// sech-family functions; solutions are small at the truncated ends.
pub fn check_embedding(cases: &Result<Vec<MatrixCase>>, random_functions: usize) -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let c1 = embedding_constant(1.0)?;
        if (c1 - FRAC_1_SQRT_2).abs() > 1e-14 {
            return Ok((false, format!("C(1) = {c1}, expected 2^(-1/2)")));
        }
        let cases = cases.as_ref().map_err(Clone::clone)?;
        let mut passed = true;
        let mut worst_ratio = 0.0_f64;
        let mut worst_decay = 0.0_f64;
        for case in cases {
            let b = case.report.bounds.iter().find(|b| b.name == "sup_embedding");
            let b = b.ok_or_else(|| Error::Spec("sup_embedding missing from report".into()))?;
            passed &= b.pass;
            worst_ratio = worst_ratio.max(b.ratio);
            let decay = boundary_decay(&case.solution) / case.report.norms.h_one;
            worst_decay = worst_decay.max(decay);
            passed &= decay <= 1e-3;
        }
        let g = default_grid();
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        for _ in 0..random_functions {
            let terms: Vec<(f64, f64, f64)> =
                (0..3).map(|_| (rng.gen_range(1.0..3.0), rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0))).collect();
            let u = sample_omega(|w| terms.iter().map(|&(a, b, c)| c * sech(a * (w - b))).sum(), &g)?;
            let h1 = hs_norm(&forward(&u), 1.0)?;
            let ratio = u.max_abs() / (c1 * h1);
            worst_ratio = worst_ratio.max(ratio);
            passed &= ratio <= 1.0 + 1e-8;
        }
        Ok((
            passed,
            format!(
                "{} solved + {random_functions} random functions; max |u|/(C(1)‖u‖_H1) {worst_ratio:.4}; max boundary decay/‖u‖_H1 {worst_decay:.2e} (≤ 1e-3)",
                cases.len()
            ),
        ))
    };
    CheckOutcome::new(9, "sup embedding", run())
}

/// `1/π² + (2/3)ξ² ≤ m² ≤ 1/π² + ξ²` at every spectral node.
pub fn check_multiplier_bounds() -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let mut total = 0;
        let mut violations = 0;
        for g in [default_grid(), wide_grid(), OmegaGrid::new(256, 4.0)?, OmegaGrid::new(1 << 16, 40.0)?] {
            let table = MultiplierTable::new(g.spectral());
            total += g.n();
            violations += table.bound_violations().len();
        }
        Ok((violations == 0, format!("{violations} violations over {total} nodes on four grids")))
    };
    CheckOutcome::new(10, "multiplier bounds", run())
}

/// Doubling `n` at fixed `L` moves `‖u‖_{L̃₂}` by at most `1e-6` relative on
/// the smooth presets, and CG needs at most 300 iterations.
pub fn check_grid_convergence(quick: bool) -> CheckOutcome {
    let run = || -> Result<(bool, String)> {
        let (coarse, fine) = if quick { (2048, 4096) } else { (DEFAULT_N, 2 * DEFAULT_N) };
        let coefficients = [CoefficientSpec::elliptic(2.0)?, CoefficientSpec::constant(1.0)?];
        let rhs = [RightHandSide::One, RightHandSide::cosine(), RightHandSide::Power { exponent: 0.1 }];
        let mut worst_change = 0.0_f64;
        let mut max_iter = 0;
        for c in &coefficients {
            for f in &rhs {
                let mut norms = Vec::new();
                for n in [coarse, fine] {
                    let spec = ProblemSpec::new(c.clone(), f.clone(), OmegaGrid::new(n, DEFAULT_L)?).with_tol(1e-10);
                    let (u, report) = solve_weak(&spec)?;
                    max_iter = max_iter.max(report.iterations);
                    norms.push(l2_tilde_norm(&u));
                }
                worst_change = worst_change.max((norms[1] - norms[0]).abs() / norms[1]);
            }
        }
        Ok((
            worst_change <= 1e-6 && max_iter <= 300,
            format!("n {coarse} → {fine}: max relative change {worst_change:.2e} (≤ 1e-6), max CG iterations {max_iter} (≤ 300)"),
        ))
    };
    CheckOutcome::new(11, "grid convergence", run())
}

/// Runs every check in order. `quick` trims the random sample and the
/// refinement pair; the acceptance tests always run the full suite.
pub fn run_suite(quick: bool) -> Vec<CheckOutcome> {
    let cases = preset_matrix();
    vec![
        check_multiplier_identity(),
        check_coth_image(),
        check_parseval(),
        check_triangulation(),
        check_elliptic(),
        check_weak_bound(&cases),
        check_strong_bound(&cases),
        check_interpolation_bound(&cases),
        check_embedding(&cases, if quick { 5 } else { 20 }),
        check_multiplier_bounds(),
        check_grid_convergence(quick),
    ]
}

/// Fixed-width table, one line per check.
pub fn format_table(outcomes: &[CheckOutcome]) -> String {
    let mut out = format!("{:<4} {:<24} {:<6} {}\n", "id", "check", "result", "detail");
    for o in outcomes {
        out.push_str(&format!(
            "{:<4} {:<24} {:<6} {}\n",
            o.id,
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        ));
    }
    out
}
