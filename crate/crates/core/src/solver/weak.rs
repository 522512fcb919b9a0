use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_1_PI;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, SpectralFunction};
use crate::operators::MultiplierTable;
use crate::ptransform::{forward, inverse};
use crate::spaces::{hs_norm, l2_tilde_norm, l2r_norm};

use super::bounds::{verify_bounds, BoundCheck};
use super::problem::ProblemSpec;

/// Energy fraction in the top octave above which the spectrum is flagged as
/// under-resolved.
pub const SPECTRAL_TAIL_WARNING: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionNorms {
    pub l2_tilde: f64,
    pub h_half: f64,
    pub h_one: f64,
    pub f_l2r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridInfo {
    pub n: usize,
    #[serde(rename = "L")]
    pub half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub iterations: usize,
    /// Final preconditioned relative residual.
    pub residual: f64,
    pub residual_history: Vec<f64>,
    /// `E(u_k) = ½[u_k, u_k] - Re(f, u_k)` after each iteration.
    pub energy_history: Vec<f64>,
    pub energy_monotone: bool,
    /// Smallest `[u_k, u_k] / ((1/π)‖u_k‖²_{H_{1/2}})` seen over the
    /// iterates; coercivity says it is at least 1.
    pub coercivity_ratio: f64,
    pub norms: SolutionNorms,
    pub bounds: Vec<BoundCheck>,
    /// Share of `Σ|U_k|²` carried by `|ξ| ≥ ξ_max/2`.
    pub spectral_tail: f64,
    pub spectral_tail_warning: bool,
    pub grid: GridInfo,
}

impl SolveReport {
    pub fn bounds_pass(&self) -> bool {
        self.bounds.iter().all(|b| b.pass)
    }
}

fn dot(h: f64, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    h * a.iter().zip(b).map(|(a, b)| a * b.conj()).sum::<Complex64>()
}

fn axpy(y: &mut [Complex64], a: Complex64, x: &[Complex64]) {
    for (y, x) in y.iter_mut().zip(x) {
        *y += a * x;
    }
}

/// Top-octave energy fraction of `U`.
pub fn spectral_tail(big_u: &SpectralFunction) -> f64 {
    let cut = 0.5 * big_u.grid().max_abs_xi();
    let (mut top, mut total) = (0.0, 0.0);
    for (k, v) in big_u.values().iter().enumerate() {
        let e = v.norm_sqr();
        total += e;
        if big_u.grid().xi(k).abs() >= cut {
            top += e;
        }
    }
    if total > 0.0 {
        top / total
    } else {
        0.0
    }
}

/// Solves the weak problem `[u, v] = (f, v)` for all `v`, which on the
/// `ω`-grid reads `(W + K) u = g` with `W = (1 - x²)V`, `K` the multiplier
/// operator and `g = (1 - x²) f`.
///
/// Conjugate gradients with the spectral preconditioner `(m(ξ) + M/2)⁻¹`;
/// stops once `√(r·Pr) ≤ tol √(g·Pg)`.
pub fn solve_weak(spec: &ProblemSpec) -> Result<(GridFunction, SolveReport)> {
    spec.validate()?;
    let grid = spec.grid;
    let h = grid.step();
    let n = grid.n();
    let w = spec.coefficient.weighted_on_grid(&grid)?;
    let g = spec.rhs.weighted_on_grid(&grid)?;
    let table = MultiplierTable::new(grid.spectral());
    let shift = 0.5 * spec.coefficient.bound();
    let precond: Vec<f64> = table.values().iter().map(|m| 1.0 / (m + shift)).collect();

    let apply_a = |u: &[Complex64]| -> Vec<Complex64> {
        let gu = GridFunction::from_parts(grid, u.to_vec());
        let ku = table.apply(&gu).into_values();
        ku.iter().zip(u).zip(&w).map(|((k, u), w)| k + u * *w).collect()
    };
    let apply_p = |r: &[Complex64]| -> Vec<Complex64> {
        let big_r = forward(&GridFunction::from_parts(grid, r.to_vec()));
        let scaled = big_r.values().iter().zip(&precond).map(|(v, p)| v * *p).collect();
        inverse(&SpectralFunction::from_parts(big_r.grid().to_owned(), scaled)).into_values()
    };
    let h_half_sq = |u: &[Complex64]| -> f64 {
        let s = hs_norm(&forward(&GridFunction::from_parts(grid, u.to_vec())), 0.5).unwrap_or(0.0);
        s * s
    };

    let gv = g.values().to_vec();
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    let mut residual_history = Vec::new();
    let mut energy_history = Vec::new();
    let mut coercivity_ratio = f64::INFINITY;
    let mut iterations = 0;
    let mut residual = 0.0;

    let g_norm = dot(h, &apply_p(&gv), &gv).re.sqrt();
    if g_norm > 0.0 {
        let mut r = gv.clone();
        let mut z = apply_p(&r);
        let mut p = z.clone();
        let mut rz = dot(h, &z, &r).re;
        loop {
            if iterations >= spec.max_iter {
                return Err(Error::Convergence { iterations, residual, history: residual_history });
            }
            iterations += 1;
            let ap = apply_a(&p);
            let alpha = rz / dot(h, &ap, &p).re;
            axpy(&mut u, alpha.into(), &p);
            axpy(&mut r, (-alpha).into(), &ap);

            // Au = g - r, so [u,u] = h<g - r, u> and E = -½ Re h<g + r, u>
            let gr_minus: Vec<Complex64> = gv.iter().zip(&r).map(|(g, r)| g - r).collect();
            let gr_plus: Vec<Complex64> = gv.iter().zip(&r).map(|(g, r)| g + r).collect();
            energy_history.push(-0.5 * dot(h, &gr_plus, &u).re);
            let form = dot(h, &gr_minus, &u).re;
            let lower = FRAC_1_PI * h_half_sq(&u);
            if lower > 0.0 {
                coercivity_ratio = coercivity_ratio.min(form / lower);
            }

            z = apply_p(&r);
            let rz_next = dot(h, &z, &r).re;
            residual = rz_next.max(0.0).sqrt() / g_norm;
            residual_history.push(residual);
            if residual <= spec.tol {
                break;
            }
            let beta = rz_next / rz;
            rz = rz_next;
            for (p, z) in p.iter_mut().zip(&z) {
                *p = z + beta * *p;
            }
        }
    }

    let solution = GridFunction::new(grid, u)?;
    let energy_monotone = energy_history.windows(2).all(|e| e[1] <= e[0] + 1e-12 * e[0].abs().max(f64::MIN_POSITIVE));
    let big_u = forward(&solution);
    let f = spec.rhs.sample(&grid)?;
    let norms = SolutionNorms {
        l2_tilde: l2_tilde_norm(&solution),
        h_half: hs_norm(&big_u, 0.5)?,
        h_one: hs_norm(&big_u, 1.0)?,
        f_l2r: l2r_norm(&f),
    };
    let tail = spectral_tail(&big_u);
    let report = SolveReport {
        iterations,
        residual,
        residual_history,
        energy_history,
        energy_monotone,
        coercivity_ratio: if coercivity_ratio.is_finite() { coercivity_ratio } else { 1.0 },
        norms,
        bounds: verify_bounds(&solution, spec)?,
        spectral_tail: tail,
        spectral_tail_warning: tail > SPECTRAL_TAIL_WARNING,
        grid: GridInfo { n, half_width: grid.half_width() },
    };
    Ok((solution, report))
}
