//! Gauss-Legendre quadrature rules on [-1, 1] and affine maps to
//! subintervals. An n-node rule is exact for polynomials of degree 2n - 1,
//! which makes it an exact integrator for the concentration matrix entries.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Largest accepted node count.
pub const MAX_NODES: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Apply the rule to a function.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre polynomial P_n and its derivative at x.
fn legendre_pn(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Standard n-node Gauss-Legendre rule on [-1, 1].
///
/// Roots come from the cosine asymptotic initial guess refined by Newton
/// iteration; the rule is mirrored about zero afterwards so node symmetry
/// holds bitwise.
pub fn gauss_legendre(n: usize) -> Result<QuadRule> {
    if n == 0 {
        return Err(Error::domain("node count must be positive"));
    }
    if n > MAX_NODES {
        return Err(Error::Resource(format!(
            "requested {n} nodes, maximum is {MAX_NODES}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n / 2;
    for i in 0..half {
        // Initial guess for the i-th root in descending order.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pn(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                break;
            }
        }
        let (_, dp) = legendre_pn(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Mirror: positive roots fill the tail, negatives the head.
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_pn(n, 0.0);
        nodes[half] = 0.0;
        weights[half] = 2.0 / (dp * dp);
    }
    Ok(QuadRule { nodes, weights })
}

/// Affine image of a rule on (a, b); weights pick up the factor (b-a)/2.
pub fn map_interval(rule: &QuadRule, a: f64, b: f64) -> Result<QuadRule> {
    if a >= b {
        return Err(Error::domain(format!("need a < b, got a = {a}, b = {b}")));
    }
    let scale = (b - a) / 2.0;
    let mid = (b + a) / 2.0;
    Ok(QuadRule {
        nodes: rule.nodes.iter().map(|&x| mid + scale * x).collect(),
        weights: rule.weights.iter().map(|&w| scale * w).collect(),
    })
}

/// Double-double refinement of the n-node rule: the double-precision roots
/// are polished with Newton steps carried in extended precision.
pub fn gauss_legendre_dd(n: usize) -> Result<(Vec<Dd>, Vec<Dd>)> {
    let base = gauss_legendre(n)?;
    let pn_dd = |x: Dd| -> (Dd, Dd) {
        let mut p_prev = Dd::ONE;
        let mut p = x;
        if n == 0 {
            return (Dd::ONE, Dd::ZERO);
        }
        for k in 1..n {
            let next = (Dd::from_f64((2 * k + 1) as f64) * x * p
                - Dd::from_f64(k as f64) * p_prev)
                / Dd::from_f64((k + 1) as f64);
            p_prev = p;
            p = next;
        }
        let dp = Dd::from_f64(n as f64) * (x * p - p_prev) / (x * x - Dd::ONE);
        (p, dp)
    };
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x0 in &base.nodes {
        let mut x = Dd::from_f64(x0);
        if x0 != 0.0 {
            for _ in 0..3 {
                let (p, dp) = pn_dd(x);
                x = x - p / dp;
            }
        }
        let (_, dp) = pn_dd(x);
        let w = Dd::from_f64(2.0) / ((Dd::ONE - x * x) * dp * dp);
        nodes.push(x);
        weights.push(w);
    }
    Ok((nodes, weights))
}
