//! The weighted problem `V u - (1/2π) PV∫ u'/(t - x) = f`, `u(±1) = 0`.
//!
//! [`solve_weak`] is the production path (transform + CG). [`solve_glauert`]
//! is an independent collocation oracle, and [`verify_bounds`] evaluates the
//! a-priori estimates on whatever solution it is handed.

mod bounds;
mod glauert;
mod problem;
mod weak;

pub use bounds::{boundary_decay, interpolated_constant, strong_constant, verify_bounds, BoundCheck};
pub use glauert::solve_glauert;
pub use problem::{
    Coefficient, CoefficientSpec, ProblemSpec, RightHandSide, TabulatedCoefficient, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
pub use weak::{solve_weak, spectral_tail, GridInfo, SolutionNorms, SolveReport, SPECTRAL_TAIL_WARNING};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{sample_omega, OmegaGrid};
    use crate::operators::GlauertExpansion;
    use crate::spaces::l2_tilde_norm;
    use crate::Error;

    fn sech(w: f64) -> f64 {
        1.0 / w.cosh()
    }

    fn grid() -> OmegaGrid {
        OmegaGrid::new(4096, 12.0).unwrap()
    }

    #[test]
    fn elliptic_closed_form() {
        let g = OmegaGrid::new(8192, 24.0).unwrap();
        let spec = ProblemSpec::new(CoefficientSpec::elliptic(2.0).unwrap(), RightHandSide::One, g);
        let (u, report) = solve_weak(&spec).unwrap();
        let max_dev = u.values().iter().enumerate().map(|(j, v)| (v - sech(g.omega(j))).norm()).fold(0.0, f64::max);
        assert!(max_dev < 1e-8, "max deviation {max_dev}");
        assert!(report.iterations < 100);
        assert!(report.bounds_pass());
    }

    #[test]
    fn constant_chord_matches_glauert() {
        let spec = ProblemSpec::new(CoefficientSpec::constant(1.0).unwrap(), RightHandSide::One, grid());
        let (u, _) = solve_weak(&spec).unwrap();
        let e = solve_glauert(&spec, 64).unwrap();
        let diff = u.combine(1.0.into(), &e.sample(&grid()), (-1.0).into()).unwrap();
        let rel = l2_tilde_norm(&diff) / l2_tilde_norm(&u);
        assert!(rel < 1e-4, "relative difference {rel}");
    }

    #[test]
    fn zero_data_gives_zero() {
        let g = grid();
        let spec = ProblemSpec::new(
            CoefficientSpec::triangular(1.0).unwrap(),
            RightHandSide::Samples(crate::GridFunction::zeros(g)),
            g,
        );
        let (u, report) = solve_weak(&spec).unwrap();
        assert_eq!(u.max_abs(), 0.0);
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn even_data_gives_even_solution() {
        let g = grid();
        for coefficient in [CoefficientSpec::constant(1.0).unwrap(), CoefficientSpec::triangular(1.0).unwrap()] {
            let spec = ProblemSpec::new(coefficient, RightHandSide::cosine(), g);
            let (u, _) = solve_weak(&spec).unwrap();
            let n = g.n();
            // ω_j and ω_{n-j} are mirror images for j ≥ 1
            let asym = (1..n).map(|j| (u.values()[j] - u.values()[n - j]).norm()).fold(0.0, f64::max);
            assert!(asym < 1e-9 * u.max_abs(), "asymmetry {asym}");
        }
    }

    #[test]
    fn even_data_leaves_even_glauert_modes_empty() {
        let g = grid();
        let spec = ProblemSpec::new(CoefficientSpec::constant(1.0).unwrap(), RightHandSide::One, g);
        let (u, _) = solve_weak(&spec).unwrap();
        let p = GlauertExpansion::project(&u, 8);
        for n in [2, 4, 6, 8] {
            assert!(p.coefficients()[n - 1].abs() < 1e-9, "A_{n}");
        }
    }

    #[test]
    fn linear_in_the_data() {
        let g = grid();
        let c = CoefficientSpec::triangular(1.0).unwrap();
        let f1 = sample_omega(|w| w.tanh().cos(), &g).unwrap();
        let f2 = sample_omega(|w| w.tanh() * 3.0, &g).unwrap();
        let mix = f1.combine(2.0.into(), &f2, (-0.5).into()).unwrap();
        let solve =
            |f| solve_weak(&ProblemSpec::new(c.clone(), RightHandSide::Samples(f), g).with_tol(1e-12)).unwrap().0;
        let (u1, u2, um) = (solve(f1), solve(f2), solve(mix));
        let expected = u1.combine(2.0.into(), &u2, (-0.5).into()).unwrap();
        let err = um.combine(1.0.into(), &expected, (-1.0).into()).unwrap().max_abs();
        assert!(err < 1e-9 * um.max_abs(), "{err}");
    }

    #[test]
    fn energy_decreases_and_form_is_coercive() {
        let spec =
            ProblemSpec::new(CoefficientSpec::triangular(1.0).unwrap(), RightHandSide::Power { exponent: 0.1 }, grid());
        let (_, report) = solve_weak(&spec).unwrap();
        assert!(report.energy_monotone);
        assert!(report.coercivity_ratio >= 1.0 - 1e-9);
        assert!(!report.spectral_tail_warning);
        assert_eq!(report.residual_history.len(), report.iterations);
    }

    #[test]
    fn iteration_cap_reports_history() {
        let spec =
            ProblemSpec::new(CoefficientSpec::triangular(1.0).unwrap(), RightHandSide::One, grid()).with_max_iter(2);
        match solve_weak(&spec) {
            Err(Error::Convergence { iterations, history, .. }) => {
                assert_eq!(iterations, 2);
                assert_eq!(history.len(), 2);
            }
            other => panic!("expected a convergence error, got {other:?}"),
        }
    }

    #[test]
    fn bound_violating_coefficient_is_rejected() {
        let c = CoefficientSpec::constant(1.0).unwrap().with_bound(0.5).unwrap();
        let spec = ProblemSpec::new(c, RightHandSide::One, grid());
        assert!(matches!(solve_weak(&spec), Err(Error::Spec(_))));
    }
}
