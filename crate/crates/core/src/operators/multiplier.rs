use std::f64::consts::{FRAC_1_PI, PI};

use crate::grid::{GridFunction, SpectralFunction, SpectralGrid};
use crate::ptransform::{forward, inverse};

/// `m(ξ) = ξ coth(πξ)`, with `m(0) = 1/π`.
pub fn multiplier(xi: f64) -> f64 {
    let a = xi.abs();
    if a < 1e-4 {
        FRAC_1_PI + PI * a * a / 3.0
    } else if PI * a > 30.0 {
        // coth saturates to 1 within 1e-26
        a
    } else {
        a / (PI * a).tanh()
    }
}

/// Lower and upper two-sided bounds on `m(ξ)²`.
pub fn multiplier_square_bounds(xi: f64) -> (f64, f64) {
    let base = FRAC_1_PI * FRAC_1_PI;
    (base + 2.0 / 3.0 * xi * xi, base + xi * xi)
}

/// `m(ξ_k)` tabulated on a spectral grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierTable {
    grid: SpectralGrid,
    values: Vec<f64>,
}

impl MultiplierTable {
    pub fn new(grid: SpectralGrid) -> Self {
        Self { grid, values: grid.xis().map(multiplier).collect() }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Nodes where `1/π² + (2/3)ξ² ≤ m² ≤ 1/π² + ξ²` or `m ≥ 1/π` fails.
    pub fn bound_violations(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|&(k, &m)| {
                let (lo, hi) = multiplier_square_bounds(self.grid.xi(k));
                let sq = m * m;
                !(lo <= sq && sq <= hi && m >= FRAC_1_PI)
            })
            .map(|(k, _)| k)
            .collect()
    }

    pub fn apply_spectral(&self, big_u: &SpectralFunction) -> SpectralFunction {
        let values = big_u.values().iter().zip(&self.values).map(|(u, m)| u * *m).collect();
        SpectralFunction::from_parts(self.grid, values)
    }

    /// `K u = inverse(m · forward(u))`.
    pub fn apply(&self, u: &GridFunction) -> GridFunction {
        inverse(&self.apply_spectral(&forward(u)))
    }

    /// `Δξ Σ m |U|²`.
    pub fn quadratic_form(&self, big_u: &SpectralFunction) -> f64 {
        self.grid.step() * big_u.values().iter().zip(&self.values).map(|(u, m)| m * u.norm_sqr()).sum::<f64>()
    }
}

/// Returns `-(1 - x²) (1/2π) PV∫ u'(t)/(t - x) dt` on the grid. The result
/// carries the `(1 - x²)` weight.
pub fn apply_prandtl_spectral(u: &GridFunction) -> GridFunction {
    MultiplierTable::new(u.grid().spectral()).apply(u)
}
