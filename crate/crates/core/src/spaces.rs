//! Weighted norms on `(-1, 1)`.
//!
//! `‖u‖²_{H̃ˢ} = (1/π) ∫ (1 + 4ξ²)ˢ |U(ξ)|² dξ`, the `L̃₂` norm being `s = 0`
//! (weight `1/(1 - x²)`), and `‖f‖²_{L₂,r} = ∫ (1 - x²) |f|² dx` for
//! right-hand sides.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, SpectralFunction};
use crate::ptransform;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormSide {
    Spectral,
    Spatial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormReport {
    pub s: f64,
    pub value: f64,
    pub side: NormSide,
}

/// Discrete `‖u‖_{H̃ˢ}` from the spectrum, truncated at the grid's `ξ` range.
pub fn hs_norm(big_u: &SpectralFunction, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("smoothness index must be non-negative, got {s}")));
    }
    let grid = big_u.grid();
    let sum: f64 = big_u
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let xi = grid.xi(k);
            (1.0 + 4.0 * xi * xi).powf(s) * v.norm_sqr()
        })
        .sum();
    Ok((grid.step() / PI * sum).sqrt())
}

pub fn hs_norm_report(big_u: &SpectralFunction, s: f64) -> Result<NormReport> {
    Ok(NormReport { s, value: hs_norm(big_u, s)?, side: NormSide::Spectral })
}

/// First derivative in `ω` by fourth-order differences, with biased
/// fourth-order stencils on the two nodes at each end.
pub(crate) fn d_domega(values: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = values.len();
    assert!(n >= 5);
    let f = values;
    let inv = 1.0 / (12.0 * h);
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
    for j in 2..n - 2 {
        d[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) * inv;
    }
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * inv;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * inv;
    d
}

/// `( ∫ |u|²/(1 - x²) + (1 - x²)|u'|² dx )^{1/2}` computed in physical space,
/// using `(1 - x²) d/dx = d/dω`.
pub fn h1_norm_spatial(u: &GridFunction) -> f64 {
    let h = u.grid().step();
    let d = d_domega(u.values(), h);
    let sum: f64 = u.values().iter().zip(&d).map(|(v, dv)| v.norm_sqr() + dv.norm_sqr()).sum();
    (h * sum).sqrt()
}

/// `( ∫ (1 - x²) |f|² dx )^{1/2} = ( h Σ sech⁴ω_j |f_j|² )^{1/2}`.
pub fn l2r_norm(f: &GridFunction) -> f64 {
    let g = f.grid();
    let sum: f64 = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let r = g.weight(j);
            r * r * v.norm_sqr()
        })
        .sum();
    (g.step() * sum).sqrt()
}

/// Plain `L₂(-1, 1)` pairing `∫ f ḡ dx`.
pub fn plain_pairing(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.grid().ensure_same(g.grid())?;
    let grid = f.grid();
    Ok(f.values()
        .iter()
        .zip(g.values())
        .enumerate()
        .map(|(j, (a, b))| a * b.conj() * grid.weight(j))
        .sum::<Complex64>()
        * grid.step())
}

/// `‖u‖_{L̃₂}` in physical space.
pub fn l2_tilde_norm(u: &GridFunction) -> f64 {
    ptransform::pairing(u, u).expect("same grid").re.sqrt()
}

/// Sup-norm constant of `H̃ˢ ⊂ C[-1, 1]`,
/// `C(s) = ( Γ(s - 1/2) / (2√π Γ(s)) )^{1/2}`, for `s > 1/2`.
pub fn embedding_constant(s: f64) -> Result<f64> {
    if !(s > 0.5) || !s.is_finite() {
        return Err(Error::Domain(format!("embedding constant needs s > 1/2, got {s}")));
    }
    // ratio through logs keeps large s finite
    let log_ratio = ln_gamma(s - 0.5) - ln_gamma(s);
    Ok((log_ratio.exp() / (2.0 * PI.sqrt())).sqrt())
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // reflection: Γ(x) Γ(1 - x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}
