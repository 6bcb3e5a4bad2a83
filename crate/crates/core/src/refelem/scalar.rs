//! Nodal Q_k basis on the unit square: tensor products of 1D Lagrange
//! polynomials at Gauss-Lobatto points. The scalar space is fully
//! discontinuous, so any unisolvent nodal set works; Lobatto nodes keep
//! the basis well conditioned up to the supported degrees.

use crate::error::{Error, Result};
use crate::poly;

#[derive(Debug, Clone)]
pub struct ReferenceScalar {
    pub degree: usize,
    nodes: Vec<f64>,
    bary: Vec<f64>,
}

/// Builds the Q_k reference basis, 0 <= k <= 6.
pub fn scalar_reference_basis(k: usize) -> Result<ReferenceScalar> {
    if k > 6 {
        return Err(Error::Unsupported(format!(
            "scalar degree k={k} above supported cap 6"
        )));
    }
    let nodes = if k == 0 {
        vec![0.5]
    } else {
        poly::gauss_lobatto_unit(k + 1)
    };
    let mut bary = vec![1.0; nodes.len()];
    for j in 0..nodes.len() {
        for m in 0..nodes.len() {
            if m != j {
                bary[j] /= nodes[j] - nodes[m];
            }
        }
    }
    Ok(ReferenceScalar {
        degree: k,
        nodes,
        bary,
    })
}

impl ReferenceScalar {
    pub fn dim(&self) -> usize {
        self.nodes.len() * self.nodes.len()
    }

    /// Nodal points, x fastest: node (a,b) has index b·(k+1) + a.
    pub fn node_points(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(self.dim());
        for b in &self.nodes {
            for a in &self.nodes {
                pts.push((*a, *b));
            }
        }
        pts
    }

    /// 1D Lagrange values at x (barycentric form).
    pub fn eval_1d(&self, x: f64) -> Vec<f64> {
        let n = self.nodes.len();
        let mut vals = vec![0.0; n];
        for j in 0..n {
            if (x - self.nodes[j]).abs() < 1e-14 {
                vals[j] = 1.0;
                return vals;
            }
        }
        let mut denom = 0.0;
        for j in 0..n {
            let t = self.bary[j] / (x - self.nodes[j]);
            vals[j] = t;
            denom += t;
        }
        for v in &mut vals {
            *v /= denom;
        }
        vals
    }

    /// Values of all basis functions at a point.
    pub fn eval(&self, x: f64, y: f64) -> Vec<f64> {
        let lx = self.eval_1d(x);
        let ly = self.eval_1d(y);
        let mut out = Vec::with_capacity(self.dim());
        for b in &ly {
            for a in &lx {
                out.push(a * b);
            }
        }
        out
    }

    /// values[dof][point] for a list of points.
    pub fn tabulate(&self, points: &[(f64, f64)]) -> Vec<Vec<f64>> {
        let mut tab = vec![vec![0.0; points.len()]; self.dim()];
        for (p, &(x, y)) in points.iter().enumerate() {
            for (d, v) in self.eval(x, y).into_iter().enumerate() {
                tab[d][p] = v;
            }
        }
        tab
    }
}
