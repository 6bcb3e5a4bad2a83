//! H(div) reference elements on K̂ = [0,1]²: Raviart-Thomas
//! RT_k = Q_{k+1,k} × Q_{k,k+1} and Brezzi-Douglas-Marini
//! BDM_k = (P_k)² ⊕ span{Curl(x^{k+1}y), Curl(xy^{k+1})}.
//!
//! The nodal basis is obtained by inverting the Gram matrix of the
//! degree-of-freedom functionals on a spanning set (orthonormal Legendre
//! products). Edge DOFs are moments of the component along the global
//! normal direction (+x on vertical edges, +y on horizontal edges)
//! against orthonormal Legendre polynomials in the edge parameter; this
//! fixed orientation makes shared-edge DOFs identical for both adjacent
//! cells.

use crate::error::{Error, Result};
use crate::poly;
use crate::quadrature::{gauss_rule, tensor_rule, QuadratureRule};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxFamily {
    RT,
    BDM,
}

impl FluxFamily {
    pub fn name(&self) -> &'static str {
        match self {
            FluxFamily::RT => "rt",
            FluxFamily::BDM => "bdm",
        }
    }
}

impl std::str::FromStr for FluxFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rt" | "raviart-thomas" => Ok(FluxFamily::RT),
            "bdm" | "brezzi-douglas-marini" => Ok(FluxFamily::BDM),
            other => Err(Error::Config(format!("unknown element family '{other}'"))),
        }
    }
}

/// One member of the polynomial spanning set.
#[derive(Debug, Clone, Copy)]
enum SpanFn {
    /// Legendre product p_a(x) p_b(y) in component `comp`, zero in the other.
    Comp { comp: usize, a: usize, b: usize },
    /// Curl(x^m y) = (x^m, -m x^{m-1} y); divergence-free.
    CurlXxY { m: usize },
    /// Curl(x y^m) = (m x y^{m-1}, -y^m); divergence-free.
    CurlXYy { m: usize },
}

impl SpanFn {
    /// (vector value, divergence) at a point.
    fn eval(&self, x: f64, y: f64) -> ([f64; 2], f64) {
        match *self {
            SpanFn::Comp { comp, a, b } => {
                let (px, dpx) = poly::legendre_orthonormal_with_deriv(a, x);
                let (py, dpy) = poly::legendre_orthonormal_with_deriv(b, y);
                let v = px[a] * py[b];
                if comp == 0 {
                    ([v, 0.0], dpx[a] * py[b])
                } else {
                    ([0.0, v], px[a] * dpy[b])
                }
            }
            SpanFn::CurlXxY { m } => {
                let xm1 = x.powi(m as i32 - 1);
                ([xm1 * x, -(m as f64) * xm1 * y], 0.0)
            }
            SpanFn::CurlXYy { m } => {
                let ym1 = y.powi(m as i32 - 1);
                ([(m as f64) * x * ym1, -ym1 * y], 0.0)
            }
        }
    }
}

/// Degree-of-freedom functional.
#[derive(Debug, Clone, Copy)]
enum DofFn {
    /// Moment of the global-normal component against the orthonormal
    /// Legendre polynomial of degree `moment` on edge `edge`
    /// (0 = left, 1 = right, 2 = bottom, 3 = top).
    Edge { edge: usize, moment: usize },
    /// Interior moment of component `comp` against p_a(x) p_b(y).
    Interior { comp: usize, a: usize, b: usize },
}

/// Reference point on edge `edge` at parameter t ∈ [0,1] (vertical edges
/// are parameterised by y, horizontal ones by x).
pub fn edge_point(edge: usize, t: f64) -> (f64, f64) {
    match edge {
        0 => (0.0, t),
        1 => (1.0, t),
        2 => (t, 0.0),
        3 => (t, 1.0),
        _ => unreachable!("edge index out of range"),
    }
}

/// Component index of the global normal on an edge: 0 (+x) for vertical
/// edges, 1 (+y) for horizontal edges.
pub fn edge_component(edge: usize) -> usize {
    if edge < 2 {
        0
    } else {
        1
    }
}

/// (k+1) orthonormal-Legendre moments of edge data sampled at the points
/// of a 1D Gauss rule in the normalized edge parameter.
pub fn edge_moments(values: &[f64], rule: &QuadratureRule, k: usize) -> Vec<f64> {
    let mut mom = vec![0.0; k + 1];
    for ((v, &t), &w) in values.iter().zip(&rule.points).zip(&rule.weights) {
        let p = poly::legendre_orthonormal(k, t);
        for (m, q) in p.iter().enumerate() {
            mom[m] += w * v * q;
        }
    }
    mom
}

/// Vector-valued reference element with a nodal basis dual to its DOFs.
#[derive(Debug, Clone)]
pub struct ReferenceFlux {
    pub family: FluxFamily,
    pub degree: usize,
    span: Vec<SpanFn>,
    dofs: Vec<DofFn>,
    /// coeff[(s, d)]: coefficient of span function s in nodal basis d.
    coeff: DMatrix<f64>,
    pub gram_condition: f64,
}

/// values[dof][point] and divergences[dof][point].
#[derive(Debug, Clone)]
pub struct FluxTabulation {
    pub values: Vec<Vec<[f64; 2]>>,
    pub divs: Vec<Vec<f64>>,
}

/// Builds the RT_k (k >= 0) or BDM_k (k >= 1) reference element.
pub fn flux_reference_basis(family: FluxFamily, k: usize) -> Result<ReferenceFlux> {
    match family {
        FluxFamily::RT => {
            if k > 6 {
                return Err(Error::Unsupported(format!("RT degree k={k} above cap 6")));
            }
        }
        FluxFamily::BDM => {
            if k < 1 {
                return Err(Error::Unsupported(
                    "BDM requires degree k >= 1".to_string(),
                ));
            }
            if k > 6 {
                return Err(Error::Unsupported(format!("BDM degree k={k} above cap 6")));
            }
        }
    }

    let mut span = Vec::new();
    match family {
        FluxFamily::RT => {
            for b in 0..=k {
                for a in 0..=k + 1 {
                    span.push(SpanFn::Comp { comp: 0, a, b });
                }
            }
            for b in 0..=k + 1 {
                for a in 0..=k {
                    span.push(SpanFn::Comp { comp: 1, a, b });
                }
            }
        }
        FluxFamily::BDM => {
            for comp in 0..2 {
                for (a, b) in poly::total_degree_pairs(k) {
                    span.push(SpanFn::Comp { comp, a, b });
                }
            }
            span.push(SpanFn::CurlXxY { m: k + 1 });
            span.push(SpanFn::CurlXYy { m: k + 1 });
        }
    }

    let mut dofs = Vec::new();
    for edge in 0..4 {
        for moment in 0..=k {
            dofs.push(DofFn::Edge { edge, moment });
        }
    }
    match family {
        FluxFamily::RT => {
            if k >= 1 {
                for b in 0..=k {
                    for a in 0..k {
                        dofs.push(DofFn::Interior { comp: 0, a, b });
                    }
                }
                for b in 0..k {
                    for a in 0..=k {
                        dofs.push(DofFn::Interior { comp: 1, a, b });
                    }
                }
            }
        }
        FluxFamily::BDM => {
            if k >= 2 {
                for comp in 0..2 {
                    for (a, b) in poly::total_degree_pairs(k - 2) {
                        dofs.push(DofFn::Interior { comp, a, b });
                    }
                }
            }
        }
    }
    debug_assert_eq!(span.len(), dofs.len());

    let dim = span.len();
    let q = k + 3;
    let line = gauss_rule(q)?;
    let cell = tensor_rule(q)?;

    let mut gram = DMatrix::<f64>::zeros(dim, dim);
    for (s, sf) in span.iter().enumerate() {
        for (d, df) in dofs.iter().enumerate() {
            gram[(d, s)] = apply_dof(*df, &line, &cell, k, |x, y| sf.eval(x, y).0);
        }
    }

    let svd = gram.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(cond < 1e12) {
        return Err(Error::Construction(format!(
            "DOF Gram matrix condition {cond:.3e} for {}_{k}; wrong spanning set?",
            family.name()
        )));
    }
    let coeff = gram
        .lu()
        .solve(&DMatrix::identity(dim, dim))
        .ok_or_else(|| Error::Construction("DOF Gram matrix is singular".to_string()))?;

    Ok(ReferenceFlux {
        family,
        degree: k,
        span,
        dofs,
        coeff,
        gram_condition: cond,
    })
}

fn apply_dof(
    dof: DofFn,
    line: &QuadratureRule,
    cell: &crate::quadrature::TensorRule,
    k: usize,
    f: impl Fn(f64, f64) -> [f64; 2],
) -> f64 {
    match dof {
        DofFn::Edge { edge, moment } => {
            let comp = edge_component(edge);
            let mut s = 0.0;
            for (&t, &w) in line.points.iter().zip(&line.weights) {
                let (x, y) = edge_point(edge, t);
                let q = poly::legendre_orthonormal(k, t);
                s += w * f(x, y)[comp] * q[moment];
            }
            s
        }
        DofFn::Interior { comp, a, b } => {
            let mut s = 0.0;
            for (&(x, y), &w) in cell.points.iter().zip(&cell.weights) {
                let px = poly::legendre_orthonormal(a, x);
                let py = poly::legendre_orthonormal(b, y);
                s += w * f(x, y)[comp] * px[a] * py[b];
            }
            s
        }
    }
}

impl ReferenceFlux {
    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn num_edge_dofs(&self) -> usize {
        4 * (self.degree + 1)
    }

    pub fn num_interior_dofs(&self) -> usize {
        self.dim() - self.num_edge_dofs()
    }

    /// Local index of the edge DOF (edge, moment).
    pub fn edge_dof(&self, edge: usize, moment: usize) -> usize {
        edge * (self.degree + 1) + moment
    }

    /// Local index of interior DOF l.
    pub fn interior_dof(&self, l: usize) -> usize {
        self.num_edge_dofs() + l
    }

    /// (vector values, divergences) of all nodal basis functions at a point.
    pub fn eval(&self, x: f64, y: f64) -> (Vec<[f64; 2]>, Vec<f64>) {
        let dim = self.dim();
        let span_vals: Vec<([f64; 2], f64)> = self.span.iter().map(|s| s.eval(x, y)).collect();
        let mut values = vec![[0.0; 2]; dim];
        let mut divs = vec![0.0; dim];
        for d in 0..dim {
            let mut v = [0.0; 2];
            let mut dv = 0.0;
            for s in 0..dim {
                let c = self.coeff[(s, d)];
                if c != 0.0 {
                    v[0] += c * span_vals[s].0[0];
                    v[1] += c * span_vals[s].0[1];
                    dv += c * span_vals[s].1;
                }
            }
            values[d] = v;
            divs[d] = dv;
        }
        (values, divs)
    }

    pub fn tabulate(&self, points: &[(f64, f64)]) -> FluxTabulation {
        let dim = self.dim();
        let mut tab = FluxTabulation {
            values: vec![vec![[0.0; 2]; points.len()]; dim],
            divs: vec![vec![0.0; points.len()]; dim],
        };
        for (p, &(x, y)) in points.iter().enumerate() {
            let (vals, divs) = self.eval(x, y);
            for d in 0..dim {
                tab.values[d][p] = vals[d];
                tab.divs[d][p] = divs[d];
            }
        }
        tab
    }

    /// Applies all DOF functionals to a reference vector field, with a
    /// caller-chosen quadrature order (for non-polynomial fields).
    pub fn apply_dofs(&self, f: impl Fn(f64, f64) -> [f64; 2], q: usize) -> Result<Vec<f64>> {
        let line = gauss_rule(q)?;
        let cell = tensor_rule(q)?;
        Ok(self
            .dofs
            .iter()
            .map(|d| apply_dof(*d, &line, &cell, self.degree, &f))
            .collect())
    }

    /// Interior DOF functionals only (edge DOFs are handled globally,
    /// once per mesh edge).
    pub fn apply_interior_dofs(
        &self,
        f: impl Fn(f64, f64) -> [f64; 2],
        q: usize,
    ) -> Result<Vec<f64>> {
        let line = gauss_rule(q)?;
        let cell = tensor_rule(q)?;
        Ok(self
            .dofs
            .iter()
            .filter(|d| matches!(d, DofFn::Interior { .. }))
            .map(|d| apply_dof(*d, &line, &cell, self.degree, &f))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dimensions_match_family_formulas() {
        // RT_k: 2(k+1)(k+2); BDM_k: (k+1)(k+2) + 2.
        for k in 0..=3 {
            let rt = flux_reference_basis(FluxFamily::RT, k).unwrap();
            assert_eq!(rt.dim(), 2 * (k + 1) * (k + 2));
            assert_eq!(rt.num_edge_dofs(), 4 * (k + 1));
            assert_eq!(rt.num_interior_dofs(), 2 * k * (k + 1));
        }
        for k in 1..=3 {
            let bdm = flux_reference_basis(FluxFamily::BDM, k).unwrap();
            assert_eq!(bdm.dim(), (k + 1) * (k + 2) + 2);
            assert_eq!(bdm.num_edge_dofs(), 4 * (k + 1));
        }
        let rt1 = flux_reference_basis(FluxFamily::RT, 1).unwrap();
        assert_eq!(rt1.dim(), 12);
        let bdm1 = flux_reference_basis(FluxFamily::BDM, 1).unwrap();
        assert_eq!(bdm1.dim(), 8);
        assert_eq!(bdm1.num_interior_dofs(), 0);
        assert!(flux_reference_basis(FluxFamily::BDM, 0).is_err());
    }

    #[test]
    fn unisolvence_dofs_of_nodal_basis_give_identity() {
        for (family, ks) in [(FluxFamily::RT, 0..=3), (FluxFamily::BDM, 1..=3)] {
            for k in ks {
                let elem = flux_reference_basis(family, k).unwrap();
                assert!(
                    elem.gram_condition < 1e9,
                    "cond {} for {}_{}",
                    elem.gram_condition,
                    family.name(),
                    k
                );
                for d in 0..elem.dim() {
                    let vals = elem
                        .apply_dofs(|x, y| elem.eval(x, y).0[d], k + 3)
                        .unwrap();
                    for (e, v) in vals.iter().enumerate() {
                        let expect = if e == d { 1.0 } else { 0.0 };
                        assert_abs_diff_eq!(*v, expect, epsilon = 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn rt0_has_constant_unit_normal_on_its_edge() {
        let elem = flux_reference_basis(FluxFamily::RT, 0).unwrap();
        assert_eq!(elem.dim(), 4);
        for edge in 0..4 {
            let d = elem.edge_dof(edge, 0);
            for t in [0.1, 0.5, 0.9] {
                for other in 0..4 {
                    let (x, y) = edge_point(other, t);
                    let v = elem.eval(x, y).0[d];
                    let comp = edge_component(other);
                    let expect = if other == edge { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(v[comp], expect, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn edge_moment_locality() {
        // A nodal basis function attached to edge e has zero normal moments
        // on every other edge.
        let line = gauss_rule(8).unwrap();
        for (family, k) in [(FluxFamily::RT, 2), (FluxFamily::BDM, 2)] {
            let elem = flux_reference_basis(family, k).unwrap();
            for edge in 0..4 {
                for m in 0..=k {
                    let d = elem.edge_dof(edge, m);
                    for other in 0..4 {
                        if other == edge {
                            continue;
                        }
                        let comp = edge_component(other);
                        let vals: Vec<f64> = line
                            .points
                            .iter()
                            .map(|&t| {
                                let (x, y) = edge_point(other, t);
                                elem.eval(x, y).0[d][comp]
                            })
                            .collect();
                        for mom in edge_moments(&vals, &line, k) {
                            assert_abs_diff_eq!(mom, 0.0, epsilon = 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn divergence_lies_in_expected_space() {
        // Project div v onto Q_k (RT) / P_{k-1} (BDM) and compare: the
        // residual must vanish for 50 random coefficient vectors.
        let cell = tensor_rule(9).unwrap();
        let mut state = 42u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for (family, k) in [
            (FluxFamily::RT, 1usize),
            (FluxFamily::RT, 2),
            (FluxFamily::BDM, 2),
            (FluxFamily::BDM, 3),
        ] {
            let elem = flux_reference_basis(family, k).unwrap();
            // Basis for the target divergence space.
            let pairs: Vec<(usize, usize)> = match family {
                FluxFamily::RT => {
                    let mut p = Vec::new();
                    for b in 0..=k {
                        for a in 0..=k {
                            p.push((a, b));
                        }
                    }
                    p
                }
                FluxFamily::BDM => poly::total_degree_pairs(k - 1),
            };
            let eval_q = |a: usize, b: usize, x: f64, y: f64| {
                poly::legendre_orthonormal(a, x)[a] * poly::legendre_orthonormal(b, y)[b]
            };
            for _case in 0..50 {
                let coeffs: Vec<f64> = (0..elem.dim()).map(|_| next()).collect();
                // Orthonormal expansion of div v in the target space.
                let mut proj = vec![0.0; pairs.len()];
                let mut norm2 = 0.0;
                let mut div_at = vec![0.0; cell.points.len()];
                for (p, &(x, y)) in cell.points.iter().enumerate() {
                    let (_, divs) = elem.eval(x, y);
                    let dv: f64 = divs.iter().zip(&coeffs).map(|(d, c)| d * c).sum();
                    div_at[p] = dv;
                    norm2 += cell.weights[p] * dv * dv;
                    for (m, &(a, b)) in pairs.iter().enumerate() {
                        proj[m] += cell.weights[p] * dv * eval_q(a, b, x, y);
                    }
                }
                let proj_norm2: f64 = proj.iter().map(|p| p * p).sum();
                let residual = (norm2 - proj_norm2).abs().sqrt();
                assert!(
                    residual <= 1e-10 * (1.0 + norm2.sqrt()),
                    "divergence escapes target space: residual {residual} ({}_{})",
                    family.name(),
                    k
                );
            }
        }
    }
}
