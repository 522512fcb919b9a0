use serde::Serialize;
use std::f64::consts::PI;

use crate::error::Result;
use crate::grid::GridFunction;
use crate::ptransform::forward;
use crate::spaces::{embedding_constant, hs_norm, l2r_norm};

use super::problem::ProblemSpec;

const BOUND_SLACK: f64 = 1e-8;

/// One a-priori estimate evaluated on a computed solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`; `0` when both sides vanish.
    pub ratio: f64,
    pub pass: bool,
}

impl BoundCheck {
    fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Self { name: name.into(), lhs, rhs, ratio, pass: lhs <= rhs * (1.0 + BOUND_SLACK) }
    }
}

/// `C₂ = π² (2 + πM/2)`, the constant in `‖u‖²_{H₁} ≤ C₂ ‖f‖²_{L₂,r}`.
pub fn strong_constant(m: f64) -> f64 {
    PI * PI * (2.0 + 0.5 * PI * m)
}

/// `C_θ = π^{1-2θ} C₂^θ`, interpolating the `H_{1/2}` and `H_1` estimates.
pub fn interpolated_constant(theta: f64, m: f64) -> f64 {
    PI.powf(1.0 - 2.0 * theta) * strong_constant(m).powf(theta)
}

/// Evaluates the weak, potential-energy, strong, interpolated and
/// sup-embedding estimates for `u` against the data in `spec`.
pub fn verify_bounds(u: &GridFunction, spec: &ProblemSpec) -> Result<Vec<BoundCheck>> {
    let grid = u.grid();
    grid.ensure_same(&spec.grid)?;
    let f = spec.rhs.sample(grid)?;
    let fr = l2r_norm(&f);
    let big_u = forward(u);
    let m = spec.coefficient.bound();
    let w = spec.coefficient.weighted_on_grid(grid)?;

    let h_half = hs_norm(&big_u, 0.5)?;
    let h_one = hs_norm(&big_u, 1.0)?;
    let potential = grid.step() * u.values().iter().zip(&w).map(|(v, w)| w * v.norm_sqr()).sum::<f64>();

    let mut checks = vec![
        BoundCheck::new("weak_h_half", h_half, PI * fr),
        BoundCheck::new("potential", potential, 0.25 * PI * fr * fr),
        BoundCheck::new("strong_h1_squared", h_one * h_one, strong_constant(m) * fr * fr),
    ];
    for theta in [0.0, 0.25, 0.5] {
        let s = 0.5 + theta;
        checks.push(BoundCheck::new(
            format!("interpolated_h{s}"),
            hs_norm(&big_u, s)?,
            interpolated_constant(theta, m) * fr,
        ));
    }
    checks.push(BoundCheck::new("sup_embedding", u.max_abs(), embedding_constant(1.0)? * h_one));
    Ok(checks)
}

/// `max(|u_0|, |u_{n-1}|)`, the solution size at the truncated ends.
pub fn boundary_decay(u: &GridFunction) -> f64 {
    let v = u.values();
    v[0].norm().max(v[v.len() - 1].norm())
}
