//! Problem data: the coefficient `V = 1/p`, the right-hand side `f`, and the
//! discretization.
//!
//! Coefficients are never sampled as bare `V` near the ends. Every consumer
//! works with the bounded product `W(ω) = (1 - x²) V(x)`, which condition (p)
//! caps by `M`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::grid::{sech, GridFunction, OmegaGrid};
use crate::spaces::l2r_norm;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 5000;

/// Relative slack on the declared bound `M` when checking grid samples.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    /// `p = p0 √(1 - x²)`
    Elliptic {
        p0: f64,
    },
    /// `p = p0`
    Constant {
        p0: f64,
    },
    /// `p = p0 (1 - |x|)`
    Triangular {
        p0: f64,
    },
    Tabulated(TabulatedCoefficient),
}

/// `p(x)` given at points; `W = (1 - x²)/p` is interpolated linearly in `ω`
/// and continued with `p` frozen at its end values outside the table.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedCoefficient {
    points: Vec<(f64, f64)>,
    omegas: Vec<f64>,
    weighted: Vec<f64>,
}

impl TabulatedCoefficient {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Spec("tabulated coefficient needs at least two points".into()));
        }
        for (i, &(x, p)) in points.iter().enumerate() {
            if !(x.abs() < 1.0) {
                return Err(Error::Spec(format!("tabulated point {i}: x = {x} is outside (-1, 1)")));
            }
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::Spec(format!("tabulated point {i}: p = {p} must be positive and finite")));
            }
            if i > 0 && !(x > points[i - 1].0) {
                return Err(Error::Spec(format!("tabulated points must have increasing x (point {i})")));
            }
        }
        let omegas = points.iter().map(|&(x, _)| x.atanh()).collect();
        let weighted = points.iter().map(|&(x, p)| (1.0 - x * x) / p).collect();
        Ok(Self { points, omegas, weighted })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    fn weighted_at(&self, omega: f64) -> f64 {
        let (w, v) = (&self.omegas, &self.weighted);
        let last = w.len() - 1;
        if omega <= w[0] {
            let s = sech(omega) / sech(w[0]);
            return v[0] * s * s;
        }
        if omega >= w[last] {
            let s = sech(omega) / sech(w[last]);
            return v[last] * s * s;
        }
        let i = w.partition_point(|&wi| wi <= omega) - 1;
        let t = (omega - w[i]) / (w[i + 1] - w[i]);
        v[i] + t * (v[i + 1] - v[i])
    }

    fn max_weighted(&self) -> f64 {
        self.weighted.iter().copied().fold(0.0, f64::max)
    }
}

/// Coefficient plus the declared bound `M ≥ sup (1 - x²) V(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSpec {
    coefficient: Coefficient,
    bound: f64,
}

fn check_p0(p0: f64) -> Result<f64> {
    if p0.is_finite() && p0 > 0.0 {
        Ok(p0)
    } else {
        Err(Error::Spec(format!("p0 must be positive and finite, got {p0}")))
    }
}

impl CoefficientSpec {
    /// `M = 1/p0`.
    pub fn elliptic(p0: f64) -> Result<Self> {
        let p0 = check_p0(p0)?;
        Ok(Self { coefficient: Coefficient::Elliptic { p0 }, bound: 1.0 / p0 })
    }

    /// `M = 1/p0`.
    pub fn constant(p0: f64) -> Result<Self> {
        let p0 = check_p0(p0)?;
        Ok(Self { coefficient: Coefficient::Constant { p0 }, bound: 1.0 / p0 })
    }

    /// `(1 - x²)/(p0 (1 - |x|)) = (1 + |x|)/p0`, so `M = 2/p0`.
    pub fn triangular(p0: f64) -> Result<Self> {
        let p0 = check_p0(p0)?;
        Ok(Self { coefficient: Coefficient::Triangular { p0 }, bound: 2.0 / p0 })
    }

    /// `M` is the largest tabulated `(1 - x²)/p`.
    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        let table = TabulatedCoefficient::new(points)?;
        let bound = table.max_weighted();
        Ok(Self { coefficient: Coefficient::Tabulated(table), bound })
    }

    /// Replaces the declared bound. Checked against the grid at solve time.
    pub fn with_bound(mut self, bound: f64) -> Result<Self> {
        if !(bound.is_finite() && bound >= 0.0) {
            return Err(Error::Spec(format!("bound M must be finite and non-negative, got {bound}")));
        }
        self.bound = bound;
        Ok(self)
    }

    pub fn coefficient(&self) -> &Coefficient {
        &self.coefficient
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn kind(&self) -> &'static str {
        match self.coefficient {
            Coefficient::Elliptic { .. } => "elliptic",
            Coefficient::Constant { .. } => "constant",
            Coefficient::Triangular { .. } => "triangular",
            Coefficient::Tabulated(_) => "tabulated",
        }
    }

    /// `W(ω) = (1 - x²) V(x)` at `x = tanh ω`.
    pub fn weighted(&self, omega: f64) -> f64 {
        match &self.coefficient {
            Coefficient::Elliptic { p0 } => sech(omega) / p0,
            Coefficient::Constant { p0 } => {
                let s = sech(omega);
                s * s / p0
            }
            Coefficient::Triangular { p0 } => (1.0 + omega.tanh().abs()) / p0,
            Coefficient::Tabulated(t) => t.weighted_at(omega),
        }
    }

    /// Bare `V` at `x = tanh ω`; unbounded toward the ends for some presets.
    pub fn v_at_omega(&self, omega: f64) -> f64 {
        let c = omega.cosh();
        self.weighted(omega) * c * c
    }

    /// Samples `W` on the grid and enforces `0 ≤ W_j ≤ M (1 + 1e-9)`.
    pub fn weighted_on_grid(&self, grid: &OmegaGrid) -> Result<Vec<f64>> {
        let limit = self.bound * (1.0 + BOUND_SLACK);
        grid.omegas()
            .enumerate()
            .map(|(j, w)| {
                let v = self.weighted(w);
                if !(v >= 0.0 && v <= limit) {
                    Err(Error::Spec(format!(
                        "coefficient violates (1 - x²)V(x) ≤ M at node {j} (x = {}): {v} > M = {}",
                        grid.x(j),
                        self.bound
                    )))
                } else {
                    Ok(v)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RightHandSide {
    /// `f ≡ 1`
    One,
    /// `f = cos(k x)`
    Cosine { k: f64 },
    /// `f = (1 - x²)^a`, `a > -1` so that `f ∈ L₂,r`
    Power { exponent: f64 },
    /// `(x, f)` pairs, linear in `x`, held constant past the ends
    Tabulated(Vec<(f64, f64)>),
    /// Samples of `f` on the problem grid
    Samples(GridFunction),
}

impl RightHandSide {
    /// `cos(πx/2)`
    pub fn cosine() -> Self {
        RightHandSide::Cosine { k: FRAC_PI_2 }
    }

    pub fn label(&self) -> String {
        match self {
            RightHandSide::One => "one".into(),
            RightHandSide::Cosine { k } => format!("cos({k}x)"),
            RightHandSide::Power { exponent } => format!("(1-x^2)^{exponent}"),
            RightHandSide::Tabulated(_) => "tabulated".into(),
            RightHandSide::Samples(_) => "samples".into(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            RightHandSide::Cosine { k } if !k.is_finite() => {
                Err(Error::Spec(format!("cosine frequency must be finite, got {k}")))
            }
            RightHandSide::Power { exponent } if !(*exponent > -1.0 && exponent.is_finite()) => {
                Err(Error::Spec(format!("power right-hand side needs exponent > -1 to lie in L2,r, got {exponent}")))
            }
            RightHandSide::Tabulated(points) => {
                if points.is_empty() {
                    return Err(Error::Spec("tabulated right-hand side is empty".into()));
                }
                if points.iter().any(|(x, f)| !(x.abs() < 1.0 && f.is_finite())) {
                    return Err(Error::Spec("tabulated right-hand side needs finite f at x in (-1, 1)".into()));
                }
                if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                    return Err(Error::Spec("tabulated right-hand side needs increasing x".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `f(tanh ω)` for the analytic kinds; `None` for grid samples.
    pub fn value_at_omega(&self, omega: f64) -> Option<f64> {
        match self {
            RightHandSide::One => Some(1.0),
            RightHandSide::Cosine { k } => Some((k * omega.tanh()).cos()),
            RightHandSide::Power { exponent } => Some(sech(omega).powf(2.0 * exponent)),
            RightHandSide::Tabulated(points) => Some(interpolate_linear(points, omega.tanh())),
            RightHandSide::Samples(_) => None,
        }
    }

    /// `f` on the grid.
    pub fn sample(&self, grid: &OmegaGrid) -> Result<GridFunction> {
        self.validate()?;
        match self {
            RightHandSide::Samples(f) => {
                grid.ensure_same(f.grid())?;
                Ok(f.clone())
            }
            other => crate::grid::sample_omega(|w| other.value_at_omega(w).expect("analytic kind"), grid),
        }
    }

    /// `g = (1 - x²) f` on the grid; computed in closed form for powers so
    /// that negative exponents stay finite far out.
    pub fn weighted_on_grid(&self, grid: &OmegaGrid) -> Result<GridFunction> {
        self.validate()?;
        match self {
            RightHandSide::Power { exponent } => {
                crate::grid::sample_omega(|w| sech(w).powf(2.0 + 2.0 * exponent), grid)
            }
            _ => {
                let f = self.sample(grid)?;
                let values = f.values().iter().enumerate().map(|(j, v)| v * grid.weight(j)).collect();
                GridFunction::new(*grid, values)
            }
        }
    }
}

fn interpolate_linear(points: &[(f64, f64)], x: f64) -> f64 {
    let last = points.len() - 1;
    if x <= points[0].0 {
        return points[0].1;
    }
    if x >= points[last].0 {
        return points[last].1;
    }
    let i = points.partition_point(|p| p.0 <= x) - 1;
    let (x0, f0) = points[i];
    let (x1, f1) = points[i + 1];
    f0 + (x - x0) / (x1 - x0) * (f1 - f0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub coefficient: CoefficientSpec,
    pub rhs: RightHandSide,
    pub grid: OmegaGrid,
    pub tol: f64,
    pub max_iter: usize,
}

impl ProblemSpec {
    pub fn new(coefficient: CoefficientSpec, rhs: RightHandSide, grid: OmegaGrid) -> Self {
        Self { coefficient, rhs, grid, tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Spec(format!("tolerance must lie in (0, 1), got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::Spec("max_iter must be positive".into()));
        }
        let f = self.rhs.sample(&self.grid)?;
        let norm = l2r_norm(&f);
        if !norm.is_finite() {
            return Err(Error::Spec("right-hand side has infinite L2,r norm on the grid".into()));
        }
        self.coefficient.weighted_on_grid(&self.grid)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> OmegaGrid {
        OmegaGrid::new(4096, 12.0).unwrap()
    }

    #[test]
    fn preset_bounds() {
        assert_eq!(CoefficientSpec::elliptic(2.0).unwrap().bound(), 0.5);
        assert_eq!(CoefficientSpec::constant(4.0).unwrap().bound(), 0.25);
        assert_eq!(CoefficientSpec::triangular(1.0).unwrap().bound(), 2.0);
        for spec in [
            CoefficientSpec::elliptic(0.3).unwrap(),
            CoefficientSpec::constant(1.7).unwrap(),
            CoefficientSpec::triangular(0.9).unwrap(),
        ] {
            let w = spec.weighted_on_grid(&grid()).unwrap();
            assert!(w.iter().all(|&v| v >= 0.0 && v <= spec.bound() * (1.0 + 1e-9)));
        }
        assert!(CoefficientSpec::elliptic(0.0).is_err());
        assert!(CoefficientSpec::constant(f64::NAN).is_err());
    }

    #[test]
    fn preset_weights_match_bare_coefficients() {
        let x: f64 = 0.6;
        let w = x.atanh();
        let r = 1.0 - x * x;
        let e = CoefficientSpec::elliptic(2.0).unwrap();
        assert!((e.weighted(w) - r / (2.0 * r.sqrt())).abs() < 1e-15);
        assert!((e.v_at_omega(w) - 1.0 / (2.0 * r.sqrt())).abs() < 1e-14);
        let t = CoefficientSpec::triangular(1.5).unwrap();
        assert!((t.weighted(w) - r / (1.5 * (1.0 - x))).abs() < 1e-15);
        let t = CoefficientSpec::triangular(1.5).unwrap();
        assert!((t.weighted(-w) - r / (1.5 * (1.0 - x))).abs() < 1e-15);
    }

    #[test]
    fn declared_bound_too_small_is_rejected() {
        let spec = CoefficientSpec::triangular(1.0).unwrap().with_bound(1.5).unwrap();
        assert!(matches!(spec.weighted_on_grid(&grid()), Err(Error::Spec(_))));
    }

    #[test]
    fn tabulated_coefficient() {
        // a constant chord given as a table reproduces the constant preset
        let points: Vec<(f64, f64)> = (0..41).map(|i| (-0.95 + 0.0475 * i as f64, 2.0)).collect();
        let tab = CoefficientSpec::tabulated(points).unwrap();
        let constant = CoefficientSpec::constant(2.0).unwrap();
        for w in [-8.0, -1.83, -0.3, 0.0, 0.7, 1.83, 9.0] {
            let (a, b) = (tab.weighted(w), constant.weighted(w));
            // interpolating sech² linearly in ω between nodes
            assert!((a - b).abs() < 1e-3, "ω = {w}: {a} vs {b}");
        }
        assert!(tab.weighted_on_grid(&grid()).is_ok());
        assert!(CoefficientSpec::tabulated(vec![(0.0, 1.0)]).is_err());
        assert!(CoefficientSpec::tabulated(vec![(0.5, 1.0), (0.1, 1.0)]).is_err());
        assert!(CoefficientSpec::tabulated(vec![(0.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(CoefficientSpec::tabulated(vec![(0.0, 1.0), (0.5, -1.0)]).is_err());
    }

    #[test]
    fn rhs_samples() {
        let g = grid();
        let one = RightHandSide::One.weighted_on_grid(&g).unwrap();
        for (j, v) in one.values().iter().enumerate() {
            assert!((v.re - g.weight(j)).abs() < 1e-16);
        }
        let p = RightHandSide::Power { exponent: 0.1 };
        let f = p.sample(&g).unwrap();
        let x = g.x(3000);
        assert!((f.values()[3000].re - (1.0 - x * x).powf(0.1)).abs() < 1e-12);
        assert!(RightHandSide::Power { exponent: -1.0 }.sample(&g).is_err());
        let tab = RightHandSide::Tabulated(vec![(-0.5, 1.0), (0.5, 3.0)]);
        assert_eq!(tab.value_at_omega(0.0), Some(2.0));
        assert_eq!(tab.value_at_omega(5.0), Some(3.0));
        let other = GridFunction::zeros(OmegaGrid::new(64, 4.0).unwrap());
        assert!(RightHandSide::Samples(other).sample(&g).is_err());
    }

    #[test]
    fn problem_validation() {
        let spec = ProblemSpec::new(CoefficientSpec::elliptic(2.0).unwrap(), RightHandSide::One, grid());
        assert!(spec.validate().is_ok());
        assert!(spec.clone().with_tol(0.0).validate().is_err());
        assert!(spec.with_max_iter(0).validate().is_err());
    }
}
