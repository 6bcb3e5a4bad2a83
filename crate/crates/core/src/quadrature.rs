//! Gauss-Legendre quadrature on the unit interval and its tensor product.

use crate::error::{Error, Result};
use crate::poly;

/// Gauss-Legendre rule on [0,1]. A rule with q points integrates
/// polynomials up to degree 2q-1 exactly.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Integrates a function over [0,1].
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Legendre nodes/weights mapped to [0,1]; 1 <= q <= 30.
pub fn gauss_rule(q: usize) -> Result<QuadratureRule> {
    if q < 1 || q > 30 {
        return Err(Error::InvalidParameter(format!(
            "quadrature point count q={q} outside supported range 1..=30"
        )));
    }
    let (t, w) = poly::gauss_legendre_std(q);
    Ok(QuadratureRule {
        points: t.iter().map(|t| 0.5 * (t + 1.0)).collect(),
        weights: w.iter().map(|w| 0.5 * w).collect(),
    })
}

/// Tensor-product points and weights on the unit square, x fastest.
#[derive(Debug, Clone)]
pub struct TensorRule {
    pub points: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
}

pub fn tensor_rule(q: usize) -> Result<TensorRule> {
    let rule = gauss_rule(q)?;
    let n = rule.len();
    let mut points = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            points.push((rule.points[i], rule.points[j]));
            weights.push(rule.weights[i] * rule.weights[j]);
        }
    }
    Ok(TensorRule { points, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn one_point_rule_is_midpoint() {
        let r = gauss_rule(1).unwrap();
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r.points[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn two_point_rule_matches_closed_form() {
        // Closed-form 2-point Gauss nodes on [0,1]: 1/2 ∓ 1/(2√3).
        let r = gauss_rule(2).unwrap();
        assert_abs_diff_eq!(r.points[0], 0.211324865405187, epsilon = 1e-12);
        assert_abs_diff_eq!(r.points[1], 0.788675134594813, epsilon = 1e-12);
        assert_abs_diff_eq!(r.weights[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.integrate(|x| x * x * x), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn five_point_rule_integrates_degree_nine() {
        let r = gauss_rule(5).unwrap();
        assert_abs_diff_eq!(r.integrate(|x| x.powi(9)), 0.1, epsilon = 1e-14);
    }

    #[test]
    fn weights_sum_to_one_and_rules_are_exact_to_degree() {
        for q in 1..=30 {
            let r = gauss_rule(q).unwrap();
            assert_abs_diff_eq!(r.weights.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
            // Exactness for monomials up to degree 2q-1.
            for d in 0..=(2 * q - 1).min(40) {
                let exact = 1.0 / (d as f64 + 1.0);
                assert_abs_diff_eq!(r.integrate(|x| x.powi(d as i32)), exact, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(gauss_rule(0).is_err());
        assert!(gauss_rule(31).is_err());
    }

    #[test]
    fn tensor_rule_integrates_mixed_monomial() {
        let r = tensor_rule(4).unwrap();
        let mut s = 0.0;
        for ((x, y), w) in r.points.iter().zip(&r.weights) {
            s += w * x.powi(3) * y.powi(5);
        }
        assert_abs_diff_eq!(s, 0.25 / 6.0, epsilon = 1e-14);
    }
}
