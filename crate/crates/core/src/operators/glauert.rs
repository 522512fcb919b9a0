//! Sine series in the Glauert angle `x = cos θ`.
//!
//! On `u = Σ A_n sin nθ` the unweighted operator `-(1/2π) PV∫ u'(t)/(t-x) dt`
//! acts diagonally: `sin nθ ↦ n sin nθ / (2 sin θ)`. This follows from
//! `∫₀^π cos nφ/(cos φ - cos θ) dφ = π sin nθ / sin θ` and is checked against
//! [`apply_prandtl_pv`](super::apply_prandtl_pv) in the tests below.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, OmegaGrid};

/// `θ(ω)` for `x = tanh ω = cos θ`: `θ = 2 atan(e^{-ω})`, accurate near both
/// ends where `acos(tanh ω)` would lose digits.
pub fn theta_of_omega(omega: f64) -> f64 {
    2.0 * (-omega).exp().atan()
}

/// `ω(θ) = -ln tan(θ/2)`.
pub fn omega_of_theta(theta: f64) -> f64 {
    -(0.5 * theta).tan().ln()
}

/// `u(cos θ) = Σ_{n=1}^{N} A_n sin nθ`; vanishes at `x = ±1` by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GlauertExpansion {
    coefficients: Vec<f64>,
}

impl GlauertExpansion {
    /// `coefficients[0]` is `A_1`.
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if let Some(i) = coefficients.iter().position(|a| !a.is_finite()) {
            return Err(Error::Domain(format!("Glauert coefficient A_{} is not finite", i + 1)));
        }
        Ok(Self { coefficients })
    }

    /// Single mode `sin nθ`, `n ≥ 1`.
    pub fn mode(n: usize) -> Self {
        assert!(n >= 1);
        let mut coefficients = vec![0.0; n];
        coefficients[n - 1] = 1.0;
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn modes(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval_theta(&self, theta: f64) -> f64 {
        self.terms().map(|(n, a)| a * (n * theta).sin()).sum()
    }

    pub fn eval_x(&self, x: f64) -> f64 {
        self.eval_theta(x.clamp(-1.0, 1.0).acos())
    }

    /// `du/dx = -Σ A_n n cos nθ / sin θ`.
    pub fn derivative_x(&self, x: f64) -> f64 {
        let theta = x.clamp(-1.0, 1.0).acos();
        -self.terms().map(|(n, a)| a * n * (n * theta).cos()).sum::<f64>() / theta.sin()
    }

    pub fn sample(&self, grid: &OmegaGrid) -> GridFunction {
        let values: Vec<f64> = grid.omegas().map(|w| self.eval_theta(theta_of_omega(w))).collect();
        GridFunction::from_real(*grid, &values).expect("finite sine series")
    }

    /// `A_n = (2/π) ∫₀^π u(cos θ) sin nθ dθ` for `n = 1..=modes`, by the
    /// trapezoidal rule in `ω` (`dθ = sech ω dω`).
    pub fn project(u: &GridFunction, modes: usize) -> Self {
        let grid = u.grid();
        let coefficients = (1..=modes)
            .map(|n| {
                let s: f64 = (0..grid.n())
                    .map(|j| {
                        let w = grid.omega(j);
                        u.values()[j].re * (n as f64 * theta_of_omega(w)).sin() / w.cosh()
                    })
                    .sum();
                2.0 / PI * grid.step() * s
            })
            .collect();
        Self { coefficients }
    }

    fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.coefficients.iter().enumerate().map(|(i, &a)| ((i + 1) as f64, a))
    }
}

/// Image of the expansion under `-(1/2π) PV∫ u'(t)/(t - x) dt` at `x = cos θ`:
/// `Σ A_n n sin nθ / (2 sin θ)`.
pub fn glauert_apply(e: &GlauertExpansion, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("Glauert angle must lie in (0, π), got {theta}")));
    }
    Ok(e.terms().map(|(n, a)| a * n * (n * theta).sin()).sum::<f64>() / (2.0 * theta.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::apply_prandtl_pv;

    #[test]
    fn eigen_relation_matches_pv_quadrature() {
        for n in 1..=4 {
            let e = GlauertExpansion::mode(n);
            for x in [-0.83, -0.2, 0.05, 0.47, 0.91] {
                let pv = apply_prandtl_pv(|t| e.eval_x(t), |t| e.derivative_x(t), x).unwrap();
                let g = glauert_apply(&e, x.acos()).unwrap();
                assert!((pv - g).abs() < 1e-9, "n = {n}, x = {x}: {pv} vs {g}");
            }
        }
    }

    #[test]
    fn examples() {
        let e1 = GlauertExpansion::mode(1);
        for theta in [0.1, 1.0, 2.5] {
            assert!((glauert_apply(&e1, theta).unwrap() - 0.5).abs() < 1e-15);
        }
        let e2 = GlauertExpansion::mode(2);
        assert!((glauert_apply(&e2, PI / 3.0).unwrap() - 1.0).abs() < 1e-15);
        let zero = GlauertExpansion::new(vec![0.0; 6]).unwrap();
        assert_eq!(glauert_apply(&zero, 1.2).unwrap(), 0.0);
    }

    #[test]
    fn angle_domain() {
        let e = GlauertExpansion::mode(1);
        assert!(glauert_apply(&e, 0.0).is_err());
        assert!(glauert_apply(&e, PI).is_err());
        assert!(GlauertExpansion::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn theta_omega_round_trip() {
        for w in [-20.0, -3.0, 0.0, 0.5, 7.0, 20.0] {
            let t = theta_of_omega(w);
            assert!((t.cos() - w.tanh()).abs() < 1e-15);
            if w.abs() < 15.0 {
                assert!((omega_of_theta(t) - w).abs() < 1e-9);
            }
        }
        assert!((theta_of_omega(0.0) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn projection_recovers_coefficients() {
        let grid = OmegaGrid::new(4096, 12.0).unwrap();
        let e = GlauertExpansion::new(vec![0.7, -0.2, 0.05, 0.0, 0.01]).unwrap();
        let p = GlauertExpansion::project(&e.sample(&grid), 7);
        for (i, a) in p.coefficients().iter().enumerate() {
            let expected = e.coefficients().get(i).copied().unwrap_or(0.0);
            assert!((a - expected).abs() < 1e-10, "A_{}", i + 1);
        }
    }
}
