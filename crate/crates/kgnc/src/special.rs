//! Generalized Laguerre polynomials and log-space factorial ratios.
//!
//! The production evaluator is the stable three-term forward recurrence;
//! the finite-series definition lives in the test suite as an independent
//! oracle. All factorial arithmetic stays in log space so amplitudes like
//! (n+ℓ)!/(n−ℓ−1)! never overflow before the final exponential.

use crate::error::{Error, Result};

/// Degree/order pair of a generalized Laguerre polynomial L^α_k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreSpec {
    degree: u32,
    order: f64,
}

impl LaguerreSpec {
    /// Validates `degree ≥ 0` and `order > −1`.
    pub fn new(degree: i64, order: f64) -> Result<Self> {
        if degree < 0 {
            return Err(Error::Domain(format!(
                "laguerre degree must be >= 0, got {degree}"
            )));
        }
        if !order.is_finite() || order <= -1.0 {
            return Err(Error::Domain(format!(
                "laguerre order must be finite and > -1, got {order}"
            )));
        }
        Ok(Self {
            degree: degree as u32,
            order,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> f64 {
        self.order
    }
}

/// L^α_k(x) for x ≥ 0 by the forward recurrence
/// (k+1) L_{k+1} = (2k+1+α−x) L_k − (k+α) L_{k−1}.
pub fn laguerre_eval(spec: LaguerreSpec, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!(
            "laguerre evaluation restricted to x >= 0, got {x}"
        )));
    }
    let alpha = spec.order;
    let mut prev = 1.0; // L_0
    if spec.degree == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + alpha - x; // L_1
    for k in 1..spec.degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// d/dx L^α_k(x) via the identity d/dx L^α_k = −L^{α+1}_{k−1}; zero for k = 0.
pub fn laguerre_derivative(spec: LaguerreSpec, x: f64) -> Result<f64> {
    if spec.degree == 0 {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain(format!(
                "laguerre evaluation restricted to x >= 0, got {x}"
            )));
        }
        return Ok(0.0);
    }
    let lowered = LaguerreSpec::new(spec.degree as i64 - 1, spec.order + 1.0)?;
    Ok(-laguerre_eval(lowered, x)?)
}

/// ln(a!/b!) by summing logarithms over the shorter range (Kahan-compensated).
pub fn log_factorial_ratio(a: u64, b: u64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (lo, hi, sign) = if a > b { (b, a, 1.0) } else { (a, b, -1.0) };
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in (lo + 1)..=hi {
        let term = (i as f64).ln();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sign * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    /// Independent oracle: finite-series definition
    /// L^α_k(x) = Σ_i (−1)^i C(k+α, k−i) x^i / i!
    /// (binomials exact for the integer orders used here).
    fn laguerre_series(k: u32, alpha: u32, x: f64) -> f64 {
        let mut sum = 0.0f64;
        for i in 0..=k {
            let binom = binom_exact((k + alpha) as u64, (k - i) as u64);
            let mut term = binom;
            for j in 1..=i {
                term *= x / j as f64;
            }
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        sum
    }

    fn binom_exact(n: u64, k: u64) -> f64 {
        let mut num = BigUint::from(1u32);
        let mut den = BigUint::from(1u32);
        for i in 0..k {
            num *= n - i;
            den *= i + 1;
        }
        let q = num / den;
        q.to_string().parse::<f64>().unwrap()
    }

    fn ln_biguint(x: &BigUint) -> f64 {
        let bits = x.bits();
        if bits <= 53 {
            return x.to_string().parse::<f64>().unwrap().ln();
        }
        let shift = bits - 53;
        let top = x >> shift;
        let mant = top.to_string().parse::<f64>().unwrap();
        mant.ln() + shift as f64 * std::f64::consts::LN_2
    }

    #[test]
    fn degree_zero_is_one() {
        let spec = LaguerreSpec::new(0, 3.0).unwrap();
        assert_eq!(laguerre_eval(spec, 7.2).unwrap(), 1.0);
    }

    #[test]
    fn degree_one_closed_form() {
        // L^3_1(x) = 1 + 3 − x
        let spec = LaguerreSpec::new(1, 3.0).unwrap();
        assert_eq!(laguerre_eval(spec, 2.0).unwrap(), 2.0);
    }

    #[test]
    fn degree_two_matches_series_oracle() {
        // L^1_2(1.5) = 3 − 3x + x²/2 at x=1.5 → −0.375
        let spec = LaguerreSpec::new(2, 1.0).unwrap();
        let got = laguerre_eval(spec, 1.5).unwrap();
        assert_eq!(laguerre_series(2, 1, 1.5), -0.375);
        assert!((got + 0.375).abs() < 1e-14, "got {got}");
    }

    #[test]
    fn recurrence_matches_series_on_grid() {
        for k in 0..=12u32 {
            for alpha in [1u32, 3, 5, 7] {
                for x in [0.0, 0.4, 1.7, 5.0, 12.5, 33.0] {
                    let spec = LaguerreSpec::new(k as i64, alpha as f64).unwrap();
                    let got = laguerre_eval(spec, x).unwrap();
                    let want = laguerre_series(k, alpha, x);
                    // the alternating series cancels down from its peak
                    // term, so compare on that scale
                    let peak = (0..=k).fold(1.0f64, |m, i| {
                        let mut t = binom_exact((k + alpha) as u64, (k - i) as u64);
                        for j in 1..=i {
                            t *= x / j as f64;
                        }
                        m.max(t.abs())
                    });
                    assert!(
                        (got - want).abs() <= 1e-13 * peak.max(1.0),
                        "k={k} a={alpha} x={x}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn derivative_trivial_cases() {
        let d0 = laguerre_derivative(LaguerreSpec::new(0, 2.0).unwrap(), 3.0).unwrap();
        assert_eq!(d0, 0.0);
        // d/dx (1 + α − x) = −1
        let d1 = laguerre_derivative(LaguerreSpec::new(1, 3.0).unwrap(), 2.0).unwrap();
        assert_eq!(d1, -1.0);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        // spec example: k=3, α=1, x=0.7; central difference with step 1e-6
        let spec = LaguerreSpec::new(3, 1.0).unwrap();
        let got = laguerre_derivative(spec, 0.7).unwrap();
        let h = 1e-6;
        let fd = (laguerre_eval(spec, 0.7 + h).unwrap() - laguerre_eval(spec, 0.7 - h).unwrap())
            / (2.0 * h);
        assert!(
            (got - fd).abs() <= 1e-6 * got.abs().max(1.0),
            "{got} vs {fd}"
        );
        assert!((got - (-3.445)).abs() < 1e-12);
    }

    #[test]
    fn log_factorial_ratio_trivial() {
        assert_eq!(log_factorial_ratio(5, 5), 0.0);
        assert!((log_factorial_ratio(3, 0) - 6.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_factorial_ratio_matches_bigint() {
        // exact big-integer oracle, including the a < b branch
        for &(a, b) in &[(50u64, 30u64), (30, 50), (200, 0), (1, 170), (120, 119)] {
            let (lo, hi) = if a > b { (b, a) } else { (a, b) };
            let mut prod = BigUint::from(1u32);
            for i in (lo + 1)..=hi {
                prod *= i;
            }
            let want = ln_biguint(&prod) * if a > b { 1.0 } else { -1.0 };
            let got = log_factorial_ratio(a, b);
            assert!(
                (got - want).abs() < 1e-12 * want.abs().max(1.0),
                "({a},{b}): {got} vs {want}"
            );
        }
        assert!((log_factorial_ratio(50, 30) - 73.81953060294286).abs() < 1e-11);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(LaguerreSpec::new(-1, 1.0).is_err());
        assert!(LaguerreSpec::new(2, -1.0).is_err());
        assert!(LaguerreSpec::new(2, f64::NAN).is_err());
        let spec = LaguerreSpec::new(2, 1.0).unwrap();
        assert!(laguerre_eval(spec, -0.5).is_err());
    }
}
