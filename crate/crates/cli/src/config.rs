//! JSON run configuration.

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use serde::Deserialize;

use prandtl_core::solver::{CoefficientSpec, RightHandSide, DEFAULT_MAX_ITER, DEFAULT_TOL};
use prandtl_core::OmegaGrid;

use crate::error::CliError;

pub const DEFAULT_N: usize = 4096;
pub const DEFAULT_L: f64 = 12.0;
const MIN_N: usize = 256;
const MAX_N: usize = 1 << 20;
const L_RANGE: (f64, f64) = (4.0, 40.0);
const TOL_RANGE: (f64, f64) = (1e-14, 1e-4);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    #[default]
    Solve,
    Transform,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum CoefficientKind {
    Elliptic,
    Constant,
    Triangular,
    Tabulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RhsKind {
    One,
    Cosine,
    Power,
    Tabulated,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoefficient {
    kind: CoefficientKind,
    p0: Option<f64>,
    #[serde(rename = "M")]
    bound: Option<f64>,
    samples: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRhs {
    kind: RhsKind,
    k: Option<f64>,
    exponent: Option<f64>,
    samples: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    n: Option<usize>,
    #[serde(rename = "L")]
    half_width: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    tol: Option<f64>,
    max_iter: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    command: Command,
    coefficient: Option<RawCoefficient>,
    rhs: Option<RawRhs>,
    #[serde(default)]
    grid: RawGrid,
    #[serde(default)]
    solver: RawSolver,
    output: Option<PathBuf>,
}

/// A validated configuration. Missing sections fall back to the elliptic
/// preset with `p0 = 2`, `f ≡ 1`, `n = 4096`, `L = 12`, `tol = 1e-10`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub coefficient: CoefficientSpec,
    pub rhs: RightHandSide,
    pub grid: OmegaGrid,
    pub tol: f64,
    pub max_iter: usize,
    pub output: Option<PathBuf>,
}

fn invalid(field: &str, message: impl Into<String>) -> CliError {
    CliError::Config(format!("{field}: {}", message.into()))
}

fn core(field: &str) -> impl Fn(prandtl_core::Error) -> CliError + '_ {
    move |e| invalid(field, e.to_string())
}

pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let raw: RawConfig = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column())))?;

    let n = raw.grid.n.unwrap_or(DEFAULT_N);
    if !n.is_power_of_two() {
        return Err(invalid("grid.n", format!("n must be a power of two, got {n}")));
    }
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(invalid("grid.n", format!("n must lie in [{MIN_N}, {MAX_N}], got {n}")));
    }
    let half_width = raw.grid.half_width.unwrap_or(DEFAULT_L);
    if !(L_RANGE.0..=L_RANGE.1).contains(&half_width) {
        return Err(invalid("grid.L", format!("L must lie in [{}, {}], got {half_width}", L_RANGE.0, L_RANGE.1)));
    }
    let grid = OmegaGrid::new(n, half_width).map_err(core("grid"))?;

    let tol = raw.solver.tol.unwrap_or(DEFAULT_TOL);
    if !(TOL_RANGE.0..=TOL_RANGE.1).contains(&tol) {
        return Err(invalid(
            "solver.tol",
            format!("tol must lie in [{:e}, {:e}], got {tol:e}", TOL_RANGE.0, TOL_RANGE.1),
        ));
    }
    let max_iter = raw.solver.max_iter.unwrap_or(DEFAULT_MAX_ITER);
    if max_iter == 0 {
        return Err(invalid("solver.max_iter", "max_iter must be positive"));
    }

    let coefficient = match raw.coefficient {
        None => CoefficientSpec::elliptic(2.0).map_err(core("coefficient"))?,
        Some(c) => coefficient(c)?,
    };
    let rhs = match raw.rhs {
        None => RightHandSide::One,
        Some(r) => rhs(r)?,
    };

    Ok(RunConfig { command: raw.command, coefficient, rhs, grid, tol, max_iter, output: raw.output })
}

fn coefficient(raw: RawCoefficient) -> Result<CoefficientSpec, CliError> {
    let spec = match raw.kind {
        CoefficientKind::Tabulated => {
            if raw.p0.is_some() {
                return Err(invalid("coefficient.p0", "not used by a tabulated coefficient"));
            }
            let samples = raw.samples.ok_or_else(|| invalid("coefficient.samples", "required for kind tabulated"))?;
            CoefficientSpec::tabulated(samples)
        }
        kind => {
            if raw.samples.is_some() {
                return Err(invalid("coefficient.samples", "only used by kind tabulated"));
            }
            let p0 = raw.p0.ok_or_else(|| invalid("coefficient.p0", "required for preset coefficients"))?;
            match kind {
                CoefficientKind::Elliptic => CoefficientSpec::elliptic(p0),
                CoefficientKind::Constant => CoefficientSpec::constant(p0),
                _ => CoefficientSpec::triangular(p0),
            }
        }
    }
    .map_err(core("coefficient"))?;
    match raw.bound {
        None => Ok(spec),
        Some(m) => spec.with_bound(m).map_err(core("coefficient.M")),
    }
}

fn rhs(raw: RawRhs) -> Result<RightHandSide, CliError> {
    let unused = |field: &str, present: bool| {
        if present {
            Err(invalid(&format!("rhs.{field}"), format!("not used by rhs kind {:?}", raw.kind).to_lowercase()))
        } else {
            Ok(())
        }
    };
    match raw.kind {
        RhsKind::One => {
            unused("k", raw.k.is_some())?;
            unused("exponent", raw.exponent.is_some())?;
            unused("samples", raw.samples.is_some())?;
            Ok(RightHandSide::One)
        }
        RhsKind::Cosine => {
            unused("exponent", raw.exponent.is_some())?;
            unused("samples", raw.samples.is_some())?;
            let k = raw.k.unwrap_or(FRAC_PI_2);
            if !k.is_finite() {
                return Err(invalid("rhs.k", "must be finite"));
            }
            Ok(RightHandSide::Cosine { k })
        }
        RhsKind::Power => {
            unused("k", raw.k.is_some())?;
            unused("samples", raw.samples.is_some())?;
            let exponent = raw.exponent.ok_or_else(|| invalid("rhs.exponent", "required for kind power"))?;
            if !(exponent > -1.0 && exponent.is_finite()) {
                return Err(invalid("rhs.exponent", format!("must be > -1 for f to lie in L2,r, got {exponent}")));
            }
            Ok(RightHandSide::Power { exponent })
        }
        RhsKind::Tabulated => {
            unused("k", raw.k.is_some())?;
            unused("exponent", raw.exponent.is_some())?;
            let samples = raw.samples.ok_or_else(|| invalid("rhs.samples", "required for kind tabulated"))?;
            if samples.is_empty() {
                return Err(invalid("rhs.samples", "must not be empty"));
            }
            if samples.iter().any(|(x, f)| !(x.abs() < 1.0 && f.is_finite())) {
                return Err(invalid("rhs.samples", "points need x in (-1, 1) and finite f"));
            }
            if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                return Err(invalid("rhs.samples", "x must be increasing"));
            }
            Ok(RightHandSide::Tabulated(samples))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message(text: &str) -> String {
        match parse_config(text) {
            Err(CliError::Config(m)) => m,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn defaults_are_filled() {
        let c = parse_config(r#"{"command":"solve","coefficient":{"kind":"elliptic","p0":2.0},"rhs":{"kind":"one"}}"#)
            .unwrap();
        assert_eq!(c.command, Command::Solve);
        assert_eq!(c.grid.n(), 4096);
        assert_eq!(c.grid.half_width(), 12.0);
        assert_eq!(c.tol, 1e-10);
        assert_eq!(c.max_iter, 5000);
        assert_eq!(c.coefficient.bound(), 0.5);
        assert_eq!(c.rhs, RightHandSide::One);
        assert_eq!(parse_config("{}").unwrap().coefficient, CoefficientSpec::elliptic(2.0).unwrap());
    }

    #[test]
    fn grid_constraints() {
        assert!(message(r#"{"grid":{"n":1000}}"#).contains("n must be a power of two"));
        assert!(message(r#"{"grid":{"n":128}}"#).contains("[256, 1048576]"));
        assert!(message(r#"{"grid":{"n":2097152}}"#).contains("grid.n"));
        assert!(message(r#"{"grid":{"L":3.5}}"#).contains("L must lie in [4, 40]"));
        assert!(message(r#"{"solver":{"tol":1e-3}}"#).contains("solver.tol"));
        assert!(message(r#"{"solver":{"tol":1e-15}}"#).contains("solver.tol"));
        assert!(parse_config(r#"{"grid":{"n":256,"L":40},"solver":{"tol":1e-14}}"#).is_ok());
        assert!(parse_config(r#"{"grid":{"n":1048576,"L":4},"solver":{"tol":1e-4}}"#).is_ok());
    }

    #[test]
    fn triangular_bound_is_set() {
        let c = parse_config(r#"{"coefficient":{"kind":"triangular","p0":1.0}}"#).unwrap();
        assert_eq!(c.coefficient.bound(), 2.0);
        let c = parse_config(r#"{"coefficient":{"kind":"constant","p0":0.5,"M":3.0}}"#).unwrap();
        assert_eq!(c.coefficient.bound(), 3.0);
    }

    #[test]
    fn unknown_keys_and_kinds_are_rejected() {
        assert!(message(r#"{"grid":{"n":4096,"h":0.1}}"#).contains("unknown field `h`"));
        assert!(message(r#"{"colour":"red"}"#).contains("unknown field"));
        assert!(message(r#"{"coefficient":{"kind":"parabolic","p0":1}}"#).contains("unknown variant"));
        assert!(message(r#"{"command":"plot"}"#).contains("unknown variant"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let m = message("{\n  \"grid\": {\"n\": 4096,}\n}");
        assert!(m.starts_with("line 2, column"), "{m}");
    }

    #[test]
    fn rhs_variants() {
        let c = parse_config(r#"{"rhs":{"kind":"cosine"}}"#).unwrap();
        assert_eq!(c.rhs, RightHandSide::Cosine { k: FRAC_PI_2 });
        let c = parse_config(r#"{"rhs":{"kind":"power","exponent":0.1}}"#).unwrap();
        assert_eq!(c.rhs, RightHandSide::Power { exponent: 0.1 });
        let c = parse_config(r#"{"rhs":{"kind":"tabulated","samples":[[-0.5,1.0],[0.5,2.0]]}}"#).unwrap();
        assert_eq!(c.rhs, RightHandSide::Tabulated(vec![(-0.5, 1.0), (0.5, 2.0)]));
        assert!(message(r#"{"rhs":{"kind":"power"}}"#).contains("rhs.exponent"));
        assert!(message(r#"{"rhs":{"kind":"power","exponent":-1.2}}"#).contains("> -1"));
        assert!(message(r#"{"rhs":{"kind":"one","k":2}}"#).contains("rhs.k"));
        assert!(message(r#"{"rhs":{"kind":"tabulated","samples":[[0.5,1],[0.1,1]]}}"#).contains("increasing"));
    }

    #[test]
    fn coefficient_variants() {
        let c =
            parse_config(r#"{"coefficient":{"kind":"tabulated","samples":[[-0.5,1.0],[0.0,2.0],[0.5,1.0]]}}"#).unwrap();
        assert_eq!(c.coefficient.kind(), "tabulated");
        assert!((c.coefficient.bound() - 0.75).abs() < 1e-15);
        assert!(message(r#"{"coefficient":{"kind":"constant"}}"#).contains("coefficient.p0"));
        assert!(message(r#"{"coefficient":{"kind":"constant","p0":-1}}"#).contains("p0"));
        assert!(message(r#"{"coefficient":{"kind":"tabulated"}}"#).contains("coefficient.samples"));
        assert!(message(r#"{"coefficient":{"kind":"elliptic","p0":1,"M":-1}}"#).contains("coefficient.M"));
    }
}
