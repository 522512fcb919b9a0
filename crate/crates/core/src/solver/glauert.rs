use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::operators::glauert::{omega_of_theta, GlauertExpansion};

use super::problem::ProblemSpec;

/// Collocation solve in a truncated sine series `u = Σ_{n=1}^{N} A_n sin nθ`
/// at `θ_m = mπ/(N + 1)`:
/// `Σ_n A_n (V(cos θ_m) sin nθ_m + n sin nθ_m / (2 sin θ_m)) = f(cos θ_m)`.
///
/// Independent of the transform path; the grid in `spec` is ignored.
pub fn solve_glauert(spec: &ProblemSpec, modes: usize) -> Result<GlauertExpansion> {
    if modes == 0 {
        return Err(Error::Spec("Glauert solve needs at least one mode".into()));
    }
    let thetas: Vec<f64> = (1..=modes).map(|m| m as f64 * PI / (modes + 1) as f64).collect();
    let mut rhs = Vec::with_capacity(modes);
    let mut v = Vec::with_capacity(modes);
    for &theta in &thetas {
        let w = omega_of_theta(theta);
        let f = spec
            .rhs
            .value_at_omega(w)
            .ok_or_else(|| Error::Spec("Glauert collocation needs a right-hand side defined off the grid".into()))?;
        rhs.push(f);
        v.push(spec.coefficient.v_at_omega(w));
    }
    let a = DMatrix::from_fn(modes, modes, |i, j| {
        let theta = thetas[i];
        let n = (j + 1) as f64;
        let s = (n * theta).sin();
        v[i] * s + n * s / (2.0 * theta.sin())
    });
    let b = DVector::from_vec(rhs);
    let solved = a.clone().lu().solve(&b).filter(|x| x.iter().all(|c| c.is_finite()));
    match solved {
        Some(x) => GlauertExpansion::new(x.iter().copied().collect()),
        None => {
            let sv = a.singular_values();
            let condition = sv.max() / sv.min();
            Err(Error::Oracle {
                message: format!("Glauert collocation matrix with {modes} modes is singular"),
                condition,
            })
        }
    }
}
