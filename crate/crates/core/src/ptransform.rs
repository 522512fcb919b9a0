//! Discrete interval transform.
//!
//! With `x = tanh ω` the transform is `U(ξ) = ∫ u₁(ω) e^{-2iξω} dω` and its
//! inverse `u₁(ω) = (1/π) ∫ U(ξ) e^{2iξω} dξ`. On the paired grids the
//! trapezoidal rule for both integrals is a length-`n` DFT:
//!
//! ```text
//! 2 ξ_k ω_j = 2π (k - n/2)(j - n/2)/n
//!           ⇒ e^{-2iξ_k ω_j} = (-1)^{j+k} e^{-2πi jk/n}     (n/2 even)
//! U_k = h (-1)^k Σ_j (-1)^j u_j e^{-2πi jk/n}
//! u_j = (1/(n h)) (-1)^j Σ_k (-1)^k U_k e^{+2πi jk/n}
//! ```
//!
//! so forward and inverse are exact inverses of each other and the discrete
//! Parseval identity `h Σ u ḡ = (Δξ/π) Σ U Ḡ` holds to rounding.

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{GridFunction, OmegaGrid, SpectralFunction};

/// Proxy for `v ∉ L̃₁`: reject when `h Σ |v_j|` exceeds this.
pub const L1_PROXY_LIMIT: f64 = 1e12;

#[inline]
fn alternate(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn dft(buf: &mut [Complex64], direction: FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft(buf.len(), direction);
    fft.process(buf);
}

pub fn forward(u: &GridFunction) -> SpectralFunction {
    let grid = *u.grid();
    let h = grid.step();
    let mut buf: Vec<Complex64> = u.values().iter().enumerate().map(|(j, &v)| v * alternate(j)).collect();
    dft(&mut buf, FftDirection::Forward);
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= h * alternate(k);
    }
    SpectralFunction::from_parts(grid.spectral(), buf)
}

pub fn inverse(big_u: &SpectralFunction) -> GridFunction {
    let grid = big_u.grid().omega_grid();
    let scale = 1.0 / (grid.n() as f64 * grid.step());
    let mut buf: Vec<Complex64> = big_u.values().iter().enumerate().map(|(k, &v)| v * alternate(k)).collect();
    dft(&mut buf, FftDirection::Inverse);
    for (j, v) in buf.iter_mut().enumerate() {
        *v *= scale * alternate(j);
    }
    GridFunction::from_parts(grid, buf)
}

/// `∫ u ḡ dx/(1 - x²) = ∫ u₁ ḡ₁ dω`, trapezoidal in `ω`.
pub fn pairing(u: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    u.grid().ensure_same(g.grid())?;
    let h = u.grid().step();
    Ok(u.values().iter().zip(g.values()).map(|(a, b)| a * b.conj()).sum::<Complex64>() * h)
}

/// Spectral side of the pairing, `(1/π) Δξ Σ U Ḡ`.
pub fn spectral_pairing(big_u: &SpectralFunction, big_g: &SpectralFunction) -> Result<Complex64> {
    big_u.grid().ensure_same(big_g.grid())?;
    let w = big_u.grid().step() / std::f64::consts::PI;
    Ok(big_u.values().iter().zip(big_g.values()).map(|(a, b)| a * b.conj()).sum::<Complex64>() * w)
}

/// Image of `(1 - y²) u'(y)`: multiplication by `2iξ`.
pub fn derivative_image(big_u: &SpectralFunction) -> SpectralFunction {
    big_u.map_with_xi(|xi, v| Complex64::new(0.0, 2.0 * xi) * v)
}

/// Whether to embed the operands in a grid of twice the width before the
/// spectral product. Padding turns the circular product into a linear one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Padding {
    #[default]
    None,
    Double,
}

fn check_integrable(v: &GridFunction) -> Result<()> {
    let l1 = v.grid().step() * v.values().iter().map(|z| z.norm()).sum::<f64>();
    if !(l1 <= L1_PROXY_LIMIT) {
        return Err(Error::NotIntegrable(format!("h·Σ|v| = {l1:e} exceeds {L1_PROXY_LIMIT:e}")));
    }
    Ok(())
}

fn padded(u: &GridFunction) -> GridFunction {
    let n = u.grid().n();
    let big = OmegaGrid::with_step(2 * n, u.grid().step()).expect("doubling a valid grid");
    let mut values = vec![Complex64::new(0.0, 0.0); 2 * n];
    // ω_j on the small grid is node j + n/2 on the doubled grid
    values[n / 2..n / 2 + n].copy_from_slice(u.values());
    GridFunction::from_parts(big, values)
}

fn unpadded(w: GridFunction, grid: OmegaGrid) -> GridFunction {
    let n = grid.n();
    let values = w.into_values()[n / 2..n / 2 + n].to_vec();
    GridFunction::from_parts(grid, values)
}

fn spectral_product(
    u: &GridFunction,
    v: &GridFunction,
    padding: Padding,
    symbol: impl Fn(f64) -> Complex64,
) -> Result<GridFunction> {
    u.grid().ensure_same(v.grid())?;
    check_integrable(v)?;
    let grid = *u.grid();
    let (u, v) = match padding {
        Padding::None => (u.clone(), v.clone()),
        Padding::Double => (padded(u), padded(v)),
    };
    let big_u = forward(&u);
    let big_v = forward(&v);
    let product: Vec<Complex64> = big_u
        .values()
        .iter()
        .zip(big_v.values())
        .enumerate()
        .map(|(k, (a, b))| symbol(big_u.grid().xi(k)) * a * b)
        .collect();
    let w = inverse(&SpectralFunction::from_parts(*big_u.grid(), product));
    Ok(match padding {
        Padding::None => w,
        Padding::Double => unpadded(w, grid),
    })
}

/// Interval convolution `∫ u(x) v((y - x)/(1 - xy)) dx/(1 - x²)`, whose image
/// is `U·V`.
pub fn convolve(u: &GridFunction, v: &GridFunction) -> Result<GridFunction> {
    convolve_with(u, v, Padding::None)
}

pub fn convolve_with(u: &GridFunction, v: &GridFunction, padding: Padding) -> Result<GridFunction> {
    spectral_product(u, v, padding, |_| Complex64::new(1.0, 0.0))
}

/// `∫ u'(x) v((y - x)/(1 - xy)) dx`, whose image is `2iξ·U·V`.
pub fn convolve_derivative(u: &GridFunction, v: &GridFunction) -> Result<GridFunction> {
    convolve_derivative_with(u, v, Padding::None)
}

pub fn convolve_derivative_with(u: &GridFunction, v: &GridFunction, padding: Padding) -> Result<GridFunction> {
    spectral_product(u, v, padding, |xi| Complex64::new(0.0, 2.0 * xi))
}
