//! Principal-value quadrature oracles.
//!
//! Both integrals are taken in the tanh-stretched variable (`t = tanh s`),
//! which turns the endpoint behaviour into exponential decay, and are summed
//! with composite 16-point Gauss panels. Nothing here touches the FFT path.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::adaptive;

/// Stretched-variable cutoff. `1 - tanh(12) ≈ 7.5e-11` is still resolved in
/// binary64, which keeps `u'(t)` accurate at the last panel.
const STRETCH_CUTOFF: f64 = 12.0;
const PV_TOL: f64 = 1e-12;
const PV_ACCEPT: f64 = 1e-8;

/// `-(1/2π) PV∫_{-1}^{1} u'(t)/(t - x) dt`, unweighted.
///
/// Uses `PV∫ u'(t)/(t-x) = ∫ (u'(t) - u'(x))/(t - x) dt + u'(x) ln((1-x)/(1+x))`.
/// `u` must vanish at `±1`; it is only used to close the two endpoint slivers
/// beyond the stretched cutoff (integration by parts, error `O(δ^{3/2})`).
pub fn apply_prandtl_pv(u: impl Fn(f64) -> f64, du: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("principal value needs |x| < 1, got {x}")));
    }
    let sx = x.atanh();
    let cutoff = STRETCH_CUTOFF.max(sx.abs() + 2.0);
    let dux = du(x);
    let integrand = |s: f64| {
        let t = s.tanh();
        let sech = 1.0 / s.cosh();
        (du(t) - dux) / (t - x) * sech * sech
    };
    let (left, e1) = adaptive(&integrand, -cutoff, sx, 16, PV_TOL);
    let (right, e2) = adaptive(&integrand, sx, cutoff, 16, PV_TOL);
    let err = e1 + e2;
    if !(err <= PV_ACCEPT) {
        return Err(Error::Accuracy { what: format!("principal value at x = {x}"), estimate: err });
    }

    // slivers (-1, -t_S) and (t_S, 1), δ = 1 - t_S
    let delta = 2.0 / ((2.0 * cutoff).exp() + 1.0);
    let t_s = 1.0 - delta;
    let sliver_right = -u(t_s) / (t_s - x) + dux * (-delta / (1.0 - x)).ln_1p();
    let sliver_left = u(-t_s) / (-t_s - x) - dux * (-delta / (1.0 + x)).ln_1p();

    let log_term = dux * ((1.0 - x) / (1.0 + x)).ln();
    let total = left + right + sliver_left + sliver_right + log_term;
    Ok(-total / (2.0 * PI))
}

/// Evaluates `PV∫_{-1}^{1} (1/y) ((1-y)/(1+y))^{iξ} dy/(1-y²)` numerically.
///
/// Pairing `y` with `-y` gives `-2i ∫_0^1 sin(2ξ artanh y)/(y(1-y²)) dy`. The
/// part `sin(2ξ artanh y)/(1-y²)` is not integrable at `y = 1`; its mean value
/// is `∫_0^∞ sin(2ξω) dω = 1/(2ξ)`. The rest,
/// `∫_0^∞ sin(2ξω) e^{-ω}/sinh ω dω`, converges absolutely and is summed with
/// the endpoint cutoff `ε = 1 - tanh Ω` halved until the added piece is below
/// tolerance.
pub fn verify_coth_image(xi: f64) -> Result<Complex64> {
    if xi == 0.0 || !(xi.abs() <= 10.0) {
        return Err(Error::Domain(format!("coth image check needs 0 < |ξ| ≤ 10, got {xi}")));
    }
    let integrand = |w: f64| (2.0 * xi * w).sin() * (-w).exp() / w.sinh();
    let panels_per_unit = 4.0 * xi.abs().max(1.0);

    let omega_of_eps = |eps: f64| 0.5 * ((2.0 - eps) / eps).ln();
    let mut eps = 1e-6;
    let mut upper = omega_of_eps(eps);
    let (mut total, mut err) = adaptive(&integrand, 0.0, upper, (upper * panels_per_unit).ceil() as usize, 1e-14);
    let mut converged = false;
    for _ in 0..80 {
        eps *= 0.5;
        let next = omega_of_eps(eps);
        let (piece, e) = adaptive(&integrand, upper, next, ((next - upper) * panels_per_unit).ceil() as usize, 1e-14);
        total += piece;
        err += e;
        upper = next;
        // remaining tail is bounded by ∫_Ω^∞ 2e^{-2ω}/(1 - e^{-2ω}) dω
        let tail = (-2.0 * upper).exp() / (1.0 - (-2.0 * upper).exp());
        if piece.abs() < 1e-13 && tail < 1e-13 {
            converged = true;
            break;
        }
    }
    if !converged || err > 1e-9 {
        return Err(Error::Accuracy { what: format!("coth image at ξ = {xi}"), estimate: err });
    }
    Ok(Complex64::new(0.0, -2.0 * (total + 0.5 / xi)))
}
