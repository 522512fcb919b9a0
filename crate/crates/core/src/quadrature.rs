//! Composite Gauss–Legendre panels for the principal-value oracles.

use std::f64::consts::PI;
use std::sync::OnceLock;

pub(crate) const GAUSS_POINTS: usize = 16;

/// Nodes and weights on `[-1, 1]` by Newton iteration on the Legendre
/// three-term recurrence.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GAUSS_POINTS))
}

/// `∫_a^b f` with `panels` equal Gauss panels.
pub(crate) fn composite(f: &impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = rule();
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        let mut s = 0.0;
        for (z, w) in nodes.iter().zip(weights) {
            s += w * f(mid + half * z);
        }
        total += half * s;
    }
    total
}

/// Doubles the panel count until two successive sums agree to `tol`
/// (absolute, relative to `max(1, |I|)`). Returns the estimate and the last
/// change.
pub(crate) fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, start_panels: usize, tol: f64) -> (f64, f64) {
    let mut panels = start_panels.max(1);
    let mut prev = composite(f, a, b, panels);
    let mut change = f64::INFINITY;
    while panels < 1 << 14 {
        panels *= 2;
        let next = composite(f, a, b, panels);
        change = (next - prev).abs();
        prev = next;
        if change <= tol * next.abs().max(1.0) {
            break;
        }
    }
    (prev, change)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_roots() {
        for n in [2, 5, 16, 31] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            // exact for degree 2n - 1
            let moment: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(2 * n as i32 - 2)).sum();
            assert!((moment - 2.0 / (2 * n - 1) as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn composite_integrates_smooth_functions() {
        let (v, change) = adaptive(&|x: f64| x.exp() * x.cos(), 0.0, 3.0, 1, 1e-14);
        let exact = 0.5 * (3.0_f64.exp() * (3.0_f64.cos() + 3.0_f64.sin()) - 1.0);
        assert!((v - exact).abs() < 1e-13);
        assert!(change < 1e-12);
    }
}
