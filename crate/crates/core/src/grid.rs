//! The tanh-stretched grid and its spectral dual.
//!
//! Points of `(-1, 1)` are addressed through `ω = artanh x`. The grid is
//! uniform in `ω`: `ω_j = (j - n/2) h` for `j = 0..n`, so there is a node at
//! `ω = 0` and the left end `-L` is a node while `+L` is not (standard DFT
//! layout, `L = n h / 2`). The spectral grid has `ξ_k = (k - n/2) Δξ` with
//! `Δξ = π / (n h)`, which covers `[-π/(2h), π/(2h))`.
//!
//! `ω` is the primary coordinate. In binary64 `tanh ω` rounds to `±1` once
//! `|ω|` exceeds about 18.4, so anything that needs `1 - x²` uses `sech² ω`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `artanh x = ½ ln((1 + x)/(1 - x))`.
pub fn omega_of_x(x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("omega_of_x needs |x| < 1, got {x}")));
    }
    Ok(x.atanh())
}

/// `tanh ω`.
pub fn x_of_omega(omega: f64) -> Result<f64> {
    if !omega.is_finite() {
        return Err(Error::Domain(format!("x_of_omega needs a finite argument, got {omega}")));
    }
    Ok(omega.tanh())
}

#[inline]
pub(crate) fn sech(omega: f64) -> f64 {
    1.0 / omega.cosh()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaGrid {
    n: usize,
    h: f64,
}

impl OmegaGrid {
    /// Grid with `n` nodes covering `[-half_width, half_width)`.
    pub fn new(n: usize, half_width: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!("half width must be positive and finite, got {half_width}")));
        }
        Self::with_step(n, 2.0 * half_width / n as f64)
    }

    pub fn with_step(n: usize, h: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("n must be a power of two and at least 8, got {n}")));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidGrid(format!("step must be positive and finite, got {h}")));
        }
        Ok(Self { n, h })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.n as f64 * self.h
    }

    pub fn omega(&self, j: usize) -> f64 {
        (j as f64 - (self.n / 2) as f64) * self.h
    }

    pub fn x(&self, j: usize) -> f64 {
        self.omega(j).tanh()
    }

    /// `1 - x_j² = sech² ω_j`.
    pub fn weight(&self, j: usize) -> f64 {
        let s = sech(self.omega(j));
        s * s
    }

    pub fn omegas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.omega(j))
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.x(j))
    }

    /// Index of the node whose `x` is closest to the given point.
    pub fn nearest_node(&self, x: f64) -> Result<usize> {
        let omega = omega_of_x(x)?;
        let j = (omega / self.h + (self.n / 2) as f64).round();
        Ok(j.clamp(0.0, (self.n - 1) as f64) as usize)
    }

    pub fn spectral(&self) -> SpectralGrid {
        SpectralGrid { n: self.n, h: self.h }
    }

    pub(crate) fn ensure_same(&self, other: &OmegaGrid) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(format!(
                "(n = {}, h = {}) vs (n = {}, h = {})",
                self.n, self.h, other.n, other.h
            )));
        }
        Ok(())
    }
}

/// DFT dual of an [`OmegaGrid`]; `Δξ · h = π / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    n: usize,
    h: f64,
}

impl SpectralGrid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> f64 {
        PI / (self.n as f64 * self.h)
    }

    pub fn xi(&self, k: usize) -> f64 {
        (k as f64 - (self.n / 2) as f64) * self.step()
    }

    pub fn xis(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.xi(k))
    }

    /// Largest `|ξ|` on the grid, `π / (2h)`.
    pub fn max_abs_xi(&self) -> f64 {
        0.5 * PI / self.h
    }

    pub fn omega_grid(&self) -> OmegaGrid {
        OmegaGrid { n: self.n, h: self.h }
    }

    pub(crate) fn ensure_same(&self, other: &SpectralGrid) -> Result<()> {
        self.omega_grid().ensure_same(&other.omega_grid())
    }
}

fn check_values(n: usize, values: &[Complex64], what: &str) -> Result<()> {
    if values.len() != n {
        return Err(Error::GridMismatch(format!("{what} has {} values for a grid of {n} nodes", values.len())));
    }
    if let Some(j) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Domain(format!("{what} has a non-finite value at index {j}")));
    }
    Ok(())
}

/// Complex samples `u(x_j)` on an [`OmegaGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: OmegaGrid,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: OmegaGrid, values: Vec<Complex64>) -> Result<Self> {
        check_values(grid.n(), &values, "grid function")?;
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: OmegaGrid, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(grid: OmegaGrid) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.n()] }
    }

    /// Internal constructor for values produced by our own arithmetic.
    pub(crate) fn from_parts(grid: OmegaGrid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.n());
        Self { grid, values }
    }

    pub fn grid(&self) -> &OmegaGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, a: Complex64) -> Self {
        Self::from_parts(self.grid, self.values.iter().map(|v| v * a).collect())
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &GridFunction, b: Complex64) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self::from_parts(self.grid, self.values.iter().zip(&other.values).map(|(u, v)| a * u + b * v).collect()))
    }
}

/// Complex samples `U(ξ_k)` on a [`SpectralGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    grid: SpectralGrid,
    values: Vec<Complex64>,
}

impl SpectralFunction {
    pub fn new(grid: SpectralGrid, values: Vec<Complex64>) -> Result<Self> {
        check_values(grid.n(), &values, "spectral function")?;
        Ok(Self { grid, values })
    }

    /// Samples a function of `ξ` on the grid.
    pub fn sample(grid: SpectralGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(grid, grid.xis().map(f).collect())
    }

    pub(crate) fn from_parts(grid: SpectralGrid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.n());
        Self { grid, values }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Pointwise product with a real symbol `m(ξ)`.
    pub fn map_with_xi(&self, m: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let values = self.values.iter().enumerate().map(|(k, &u)| m(self.grid.xi(k), u)).collect();
        Self::from_parts(self.grid, values)
    }
}

/// Samples a function of `x` at every node.
pub fn sample(f: impl Fn(f64) -> f64, grid: &OmegaGrid) -> Result<GridFunction> {
    sample_with(grid, |j| f(grid.x(j)))
}

/// Samples a function given in the `ω` coordinate, `u₁(ω) = u(tanh ω)`.
///
/// Prefer this for anything with endpoint behaviour: `sech ω` is exact where
/// `√(1 - x²)` evaluated at a rounded `x` is not.
pub fn sample_omega(f: impl Fn(f64) -> f64, grid: &OmegaGrid) -> Result<GridFunction> {
    sample_with(grid, |j| f(grid.omega(j)))
}

fn sample_with(grid: &OmegaGrid, f: impl Fn(usize) -> f64) -> Result<GridFunction> {
    let mut values = Vec::with_capacity(grid.n());
    for j in 0..grid.n() {
        let value = f(j);
        if !value.is_finite() {
            return Err(Error::Sampling { node: j, x: grid.x(j), omega: grid.omega(j), value });
        }
        values.push(Complex64::new(value, 0.0));
    }
    Ok(GridFunction::from_parts(*grid, values))
}
