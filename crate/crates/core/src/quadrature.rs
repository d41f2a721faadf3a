//! Gauss–Legendre rules with order doubling, and the sine map that removes
//! inverse-square-root endpoint behaviour between two turning points.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use crate::error::{Result, WkbError};

/// Lowest order tried by [`integrate_adaptive`].
pub const MIN_ORDER: usize = 16;
/// Highest order tried before giving up (2¹⁴).
pub const MAX_ORDER: usize = 1 << 14;

const LEVELS: usize = 11; // 16 .. 16384

/// Nodes and weights of an n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the three-term recurrence; nodes come out
    /// symmetric, so only half are solved for.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1e-300) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d.is_finite() { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Cached rule of order `MIN_ORDER · 2^level`.
    pub fn cached(level: usize) -> &'static GaussLegendre {
        static RULES: [OnceLock<GaussLegendre>; LEVELS] = [const { OnceLock::new() }; LEVELS];
        RULES[level].get_or_init(|| GaussLegendre::new(MIN_ORDER << level))
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum();
        sum * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub order: usize,
}

/// Convergence target: successive orders must agree to `rel` relative or
/// `abs` absolute, whichever is looser.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_order: usize,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self { rel, abs: 0.0, max_order: MAX_ORDER }
    }
}

/// Integrates `f` over `[a, b]`, doubling the Gauss–Legendre order from
/// [`MIN_ORDER`] until successive values agree.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    operation: &'static str,
    a: f64,
    b: f64,
    tol: Tolerance,
    mut f: F,
) -> Result<Quadrature> {
    let max_order = tol.max_order;
    let mut previous = GaussLegendre::cached(0).integrate(a, b, &mut f);
    if !previous.is_finite() {
        return Err(WkbError::QuadratureFailure { operation, order: MIN_ORDER });
    }
    let mut last_order = MIN_ORDER;
    for level in 1..LEVELS {
        let order = MIN_ORDER << level;
        if order > max_order {
            break;
        }
        let value = GaussLegendre::cached(level).integrate(a, b, &mut f);
        if !value.is_finite() {
            return Err(WkbError::QuadratureFailure { operation, order });
        }
        if (value - previous).abs() <= (tol.rel * value.abs()).max(tol.abs) {
            return Ok(Quadrature { value, order });
        }
        previous = value;
        last_order = order;
    }
    Err(WkbError::QuadratureFailure { operation, order: last_order })
}

/// `∫_a^b g(x) dx` through `x = (a+b)/2 + (b−a)/2 · sin u`, which turns an
/// integrand vanishing like `√(x − a)` (or blowing up like `1/√(x − a)`) at
/// either end into a smooth one.
pub fn integrate_between_turning_points<G: FnMut(f64) -> f64>(
    operation: &'static str,
    a: f64,
    b: f64,
    tol: Tolerance,
    mut g: G,
) -> Result<Quadrature> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    integrate_adaptive(operation, -FRAC_PI_2, FRAC_PI_2, tol, |u| {
        let c = u.cos();
        if c <= 0.0 {
            return 0.0;
        }
        g(mid + half * u.sin()) * half * c
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 33] {
            let rule = GaussLegendre::new(n);
            let deg = 2 * n - 1;
            let got = rule.integrate(0.0, 2.0, |x| x.powi(deg as i32));
            let want = 2f64.powi(deg as i32 + 1) / (deg as f64 + 1.0);
            assert_relative_eq!(got, want, max_relative = 1e-13);
            assert_relative_eq!(rule.weights().iter().sum::<f64>(), 2.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn high_order_rules_are_sane() {
        let rule = GaussLegendre::cached(8);
        assert_eq!(rule.order(), 4096);
        assert!(rule.nodes().windows(2).all(|w| w[1] > w[0]));
        assert_relative_eq!(rule.weights().iter().sum::<f64>(), 2.0, max_relative = 1e-12);
    }

    #[test]
    fn sine_map_handles_sqrt_endpoints() {
        // ∫_{-1}^{1} √(1−x²) dx = π/2 ; ∫ 1/√(1−x²) = π
        let q = integrate_between_turning_points("t", -1.0, 1.0, Tolerance::relative(1e-13), |x| {
            (1.0 - x * x).max(0.0).sqrt()
        })
        .unwrap();
        assert_relative_eq!(q.value, FRAC_PI_2, max_relative = 1e-13);
        let q = integrate_between_turning_points("t", -1.0, 1.0, Tolerance::relative(1e-13), |x| {
            1.0 / (1.0 - x * x).sqrt()
        })
        .unwrap();
        assert_relative_eq!(q.value, PI, max_relative = 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let tol = Tolerance { rel: 1e-14, abs: 0.0, max_order: 64 };
        let err = integrate_adaptive("t", 0.0, 1.0, tol, |x| (1e4 * x).sin().abs()).unwrap_err();
        assert!(matches!(err, WkbError::QuadratureFailure { order: 64, .. }));
    }
}
