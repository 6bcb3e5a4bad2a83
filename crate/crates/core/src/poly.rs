//! 1D polynomial building blocks: Legendre recurrences on [0,1] and
//! Gauss-Lobatto node computation for the nodal scalar basis.

/// Values of the orthonormal shifted Legendre polynomials p_0..p_n at `x`,
/// where p_j is the degree-j Legendre polynomial mapped to [0,1] and scaled
/// so that ∫₀¹ p_i p_j = δ_ij.
pub fn legendre_orthonormal(n: usize, x: f64) -> Vec<f64> {
    let t = 2.0 * x - 1.0;
    let mut p = Vec::with_capacity(n + 1);
    let mut pk_m1 = 1.0;
    let mut pk = t;
    p.push(1.0);
    if n >= 1 {
        p.push(t * (3.0f64).sqrt());
    }
    for k in 1..n {
        let kf = k as f64;
        let pk_p1 = ((2.0 * kf + 1.0) * t * pk - kf * pk_m1) / (kf + 1.0);
        p.push(pk_p1 * (2.0 * (kf + 1.0) + 1.0).sqrt());
        pk_m1 = pk;
        pk = pk_p1;
    }
    p
}

/// Values and first derivatives of the orthonormal shifted Legendre
/// polynomials p_0..p_n at `x`. Derivatives are with respect to x ∈ [0,1]
/// (chain-rule factor 2 included).
pub fn legendre_orthonormal_with_deriv(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let t = 2.0 * x - 1.0;
    let mut val = vec![0.0; n + 1];
    let mut der = vec![0.0; n + 1];
    // Unnormalised P_k(t) and P_k'(t).
    let mut p = vec![0.0; n + 1];
    let mut dp = vec![0.0; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = t;
        dp[1] = 1.0;
    }
    for k in 1..n {
        let kf = k as f64;
        p[k + 1] = ((2.0 * kf + 1.0) * t * p[k] - kf * p[k - 1]) / (kf + 1.0);
        dp[k + 1] = ((2.0 * kf + 1.0) * (p[k] + t * dp[k]) - kf * dp[k - 1]) / (kf + 1.0);
    }
    for k in 0..=n {
        let scale = (2.0 * k as f64 + 1.0).sqrt();
        val[k] = p[k] * scale;
        der[k] = dp[k] * scale * 2.0;
    }
    (val, der)
}

/// Legendre polynomial P_n and its derivative at t ∈ [-1,1].
fn legendre_pair(n: usize, t: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut pm1 = 1.0;
    let mut p = t;
    for k in 1..n {
        let kf = k as f64;
        let pp1 = ((2.0 * kf + 1.0) * t * p - kf * pm1) / (kf + 1.0);
        pm1 = p;
        p = pp1;
    }
    // P_n'(t) = n (t P_n - P_{n-1}) / (t² - 1) away from ±1.
    let dp = if (t.abs() - 1.0).abs() < 1e-14 {
        let nf = n as f64;
        t.powi(n as i32 + 1) * nf * (nf + 1.0) / 2.0
    } else {
        n as f64 * (t * p - pm1) / (t * t - 1.0)
    };
    (p, dp)
}

/// Gauss-Legendre nodes and weights on [-1,1], by Newton iteration on P_n.
pub fn gauss_legendre_std(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Initial guess (Chebyshev-like), roots ordered decreasing in t.
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, t);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, t);
        nodes[n - 1 - i] = t;
        weights[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    // Symmetrise to remove last-ulp asymmetry from the iteration.
    for i in 0..n / 2 {
        let a = 0.5 * (nodes[i] - nodes[n - 1 - i]);
        nodes[i] = a;
        nodes[n - 1 - i] = -a;
        let w = 0.5 * (weights[i] + weights[n - 1 - i]);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Gauss-Lobatto nodes on [0,1] (m points, m >= 2), endpoints included.
/// Interior nodes are the roots of P'_{m-1}.
pub fn gauss_lobatto_unit(m: usize) -> Vec<f64> {
    assert!(m >= 2);
    let n = m - 1;
    let mut nodes = vec![0.0; m];
    nodes[0] = -1.0;
    nodes[n] = 1.0;
    for i in 1..n {
        // Roots of P'_n, initial guess between Chebyshev-Lobatto points.
        let mut t = ((i as f64) * std::f64::consts::PI / n as f64).cos();
        t = -t;
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, t);
            // P''_n from the Legendre ODE: (1-t²)P'' = 2t P' - n(n+1) P.
            let ddp = (2.0 * t * dp - (n as f64) * (n as f64 + 1.0) * p) / (1.0 - t * t);
            let dt = dp / ddp;
            t -= dt;
            if dt.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = t;
    }
    nodes.iter().map(|t| 0.5 * (t + 1.0)).collect()
}

/// Enumerates exponent pairs (a,b) with a+b <= k  (total-degree space P_k).
pub fn total_degree_pairs(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for d in 0..=k {
        for a in 0..=d {
            out.push((d - a, a));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn orthonormal_legendre_is_orthonormal() {
        let (nodes, weights) = gauss_legendre_std(10);
        let mut gram = [[0.0; 5]; 5];
        for (t, w) in nodes.iter().zip(&weights) {
            let x = 0.5 * (t + 1.0);
            let p = legendre_orthonormal(4, x);
            for i in 0..5 {
                for j in 0..5 {
                    gram[i][j] += 0.5 * w * p[i] * p[j];
                }
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(gram[i][j], expect, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn legendre_derivatives_match_finite_differences() {
        let x = 0.37;
        let h = 1e-6;
        let (_, der) = legendre_orthonormal_with_deriv(6, x);
        let vp = legendre_orthonormal(6, x + h);
        let vm = legendre_orthonormal(6, x - h);
        for k in 0..=6 {
            let fd = (vp[k] - vm[k]) / (2.0 * h);
            assert_abs_diff_eq!(der[k], fd, epsilon = 1e-6 * (1.0 + der[k].abs()));
        }
    }

    #[test]
    fn lobatto_nodes_contain_endpoints_and_are_sorted() {
        for m in 2..=7 {
            let nodes = gauss_lobatto_unit(m);
            assert_eq!(nodes.len(), m);
            assert_abs_diff_eq!(nodes[0], 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(nodes[m - 1], 1.0, epsilon = 1e-15);
            for w in nodes.windows(2) {
                assert!(w[1] > w[0]);
            }
        }
    }

    #[test]
    fn total_degree_enumeration_counts() {
        assert_eq!(total_degree_pairs(0).len(), 1);
        assert_eq!(total_degree_pairs(1).len(), 3);
        assert_eq!(total_degree_pairs(3).len(), 10);
    }
}
