//! Generalized Gauss–Laguerre quadrature on the half-line against the
//! weight e^{−x} x^α.
//!
//! Nodes are eigenvalues of the symmetric Jacobi matrix of the recurrence
//! coefficients (Golub–Welsch); weights come from the Christoffel sum over
//! the orthonormal polynomial values at each node, which needs no
//! eigenvectors and stays positive by construction.

use crate::error::{Error, Result};
use crate::tridiag;
use statrs::function::gamma::ln_gamma;

pub const MAX_ORDER: usize = 512;

/// An immutable half-line quadrature rule for the weight e^{−x} x^α.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    weight_exponent: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn weight_exponent(&self) -> f64 {
        self.weight_exponent
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ wᵢ f(xᵢ). The weight e^{−x} x^α is implicit: callers pass only the
    /// remaining factor of the integrand.
    pub fn integrate_halfline<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let mut sum = 0.0f64;
        for (i, (&x, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            let fx = f(x);
            if !fx.is_finite() {
                return Err(Error::Numeric(format!(
                    "integrand not finite at node {i} (x = {x})"
                )));
            }
            sum += w * fx;
        }
        Ok(sum)
    }
}

/// Build the generalized Gauss–Laguerre rule of the given order.
///
/// Exact for polynomials of degree ≤ 2·order − 1 against e^{−x} x^α.
pub fn gauss_laguerre_rule(order: usize, weight_exponent: f64) -> Result<QuadratureRule> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::Domain(format!(
            "quadrature order must be in 1..={MAX_ORDER}, got {order}"
        )));
    }
    if !weight_exponent.is_finite() || weight_exponent <= -1.0 {
        return Err(Error::Domain(format!(
            "weight exponent must be finite and > -1, got {weight_exponent}"
        )));
    }
    let alpha = weight_exponent;

    // Jacobi matrix of the recurrence: a_i = 2i + α + 1, b_i = sqrt(i (i + α))
    let diag: Vec<f64> = (0..order).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..order)
        .map(|i| (i as f64 * (i as f64 + alpha)).sqrt())
        .collect();

    let nodes = tridiag::lowest_eigenvalues(&diag, &off, order);
    let mu0 = ln_gamma(alpha + 1.0).exp();

    let weights: Vec<f64> = nodes
        .iter()
        .map(|&x| christoffel_weight(&diag, &off, mu0, x))
        .collect();

    let rule = QuadratureRule {
        order,
        weight_exponent,
        nodes,
        weights,
    };
    validate(&rule, mu0)?;
    Ok(rule)
}

/// w(x) = 1 / Σ_k p̃_k(x)² over the orthonormal polynomials of the weight,
/// with power-of-two rescaling so intermediate values cannot overflow.
fn christoffel_weight(diag: &[f64], off: &[f64], mu0: f64, x: f64) -> f64 {
    let order = diag.len();
    let mut prev = 0.0f64;
    let mut cur = 1.0 / mu0.sqrt(); // orthonormal p_0
    let mut sum = cur * cur;
    let mut scale_log2: i64 = 0;

    for k in 0..order - 1 {
        let b_next = off[k];
        let next = ((x - diag[k]) * cur - if k > 0 { off[k - 1] * prev } else { 0.0 }) / b_next;
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            let f = 2.0f64.powi(-500);
            prev *= f;
            cur *= f;
            sum *= f * f;
            scale_log2 += 500;
        }
        sum += cur * cur;
    }
    // true sum = sum * 2^(2*scale_log2); weight = 1 / true_sum
    let w = (1.0 / sum) * 2.0f64.powi((-2 * scale_log2).clamp(-2000, 0) as i32);
    // weights below f64 range are clamped to keep the positivity invariant;
    // they contribute nothing at working precision
    if w <= 0.0 || !w.is_finite() {
        f64::MIN_POSITIVE
    } else {
        w.max(f64::MIN_POSITIVE)
    }
}

fn validate(rule: &QuadratureRule, mu0: f64) -> Result<()> {
    let n = rule.order;
    if rule.nodes.len() != n || rule.weights.len() != n {
        return Err(Error::Numeric("node/weight length mismatch".into()));
    }
    for i in 0..n {
        if rule.nodes[i].is_nan() || rule.nodes[i] <= 0.0 {
            return Err(Error::Numeric(format!(
                "node {i} not positive: {}",
                rule.nodes[i]
            )));
        }
        if i > 0 && rule.nodes[i] <= rule.nodes[i - 1] {
            return Err(Error::Numeric(format!(
                "nodes not strictly increasing at {i}"
            )));
        }
        if rule.weights[i].is_nan() || rule.weights[i] <= 0.0 {
            return Err(Error::Numeric(format!(
                "weight {i} not positive: {}",
                rule.weights[i]
            )));
        }
    }
    // moment-0 check: Σ w = Γ(α+1)
    let total: f64 = rule.weights.iter().sum();
    if ((total - mu0) / mu0).abs() > 1e-10 {
        return Err(Error::Numeric(format!(
            "moment-0 check failed: sum of weights {total} vs Γ(α+1) = {mu0}"
        )));
    }
    Ok(())
}
