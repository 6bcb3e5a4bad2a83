//! S-type graded 1D meshes (Shishkin, Bakhvalov-S) and their 2D tensor
//! products, with layer-region classification.
//!
//! A mesh-generating function φ on [0, 1/2] with φ(0) = 0, φ(1/2) = ln N
//! grades the cells inside the boundary layer; ψ = e^{-φ} is the
//! mesh-characterising function whose max |ψ'| enters the error bounds.

use crate::error::{Error, Result};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFamily {
    Shishkin,
    BakhvalovS,
}

impl MeshFamily {
    pub fn name(&self) -> &'static str {
        match self {
            MeshFamily::Shishkin => "shishkin",
            MeshFamily::BakhvalovS => "bakhvalov-s",
        }
    }
}

impl std::str::FromStr for MeshFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "shishkin" | "s" => Ok(MeshFamily::Shishkin),
            "bakhvalov-s" | "bakhvalovs" | "bakhvalov" | "bs" => Ok(MeshFamily::BakhvalovS),
            other => Err(Error::Config(format!("unknown mesh family '{other}'"))),
        }
    }
}

/// Where the graded layer bands sit: both ends of [0,1] or only the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    TwoSided,
    LeftOnly,
}

impl Layout {
    pub fn name(&self) -> &'static str {
        match self {
            Layout::TwoSided => "two-sided",
            Layout::LeftOnly => "left-only",
        }
    }

    /// Cap on the transition width λ.
    pub fn lambda_cap(&self) -> f64 {
        match self {
            Layout::TwoSided => 0.25,
            Layout::LeftOnly => 0.5,
        }
    }

    pub fn divisor(&self) -> usize {
        match self {
            Layout::TwoSided => 4,
            Layout::LeftOnly => 2,
        }
    }
}

impl std::str::FromStr for Layout {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "two-sided" | "twosided" | "two" => Ok(Layout::TwoSided),
            "left-only" | "leftonly" | "left" => Ok(Layout::LeftOnly),
            other => Err(Error::Config(format!("unknown layout '{other}'"))),
        }
    }
}

/// Mesh-generating function φ for an S-type mesh with N cells, together
/// with ψ = e^{-φ} and max |ψ'| over [0, 1/2].
#[derive(Debug, Clone, Copy)]
pub struct MeshGenFunction {
    pub family: MeshFamily,
    pub n: usize,
}

impl MeshGenFunction {
    pub fn new(family: MeshFamily, n: usize) -> Result<Self> {
        if n < 8 {
            return Err(Error::InvalidParameter(format!(
                "cell count N={n} must be at least 8"
            )));
        }
        Ok(Self { family, n })
    }

    /// φ(t) for t ∈ [0, 1/2]; φ(0) = 0, φ(1/2) = ln N, strictly increasing.
    pub fn phi(&self, t: f64) -> f64 {
        let n = self.n as f64;
        match self.family {
            MeshFamily::Shishkin => 2.0 * t * n.ln(),
            MeshFamily::BakhvalovS => -(1.0 - 2.0 * t * (1.0 - 1.0 / n)).ln(),
        }
    }

    /// ψ(t) = e^{-φ(t)}.
    pub fn psi(&self, t: f64) -> f64 {
        (-self.phi(t)).exp()
    }

    /// max_{t ∈ [0,1/2]} |ψ'(t)|. Exact values: 2 ln N (Shishkin) and
    /// 2(1 - 1/N) (Bakhvalov-S; commonly quoted as 2).
    pub fn max_abs_psi_prime(&self) -> f64 {
        let n = self.n as f64;
        match self.family {
            MeshFamily::Shishkin => 2.0 * n.ln(),
            MeshFamily::BakhvalovS => 2.0 * (1.0 - 1.0 / n),
        }
    }
}

/// Transition width λ = min{σ ε ln N, cap}. The cap is 1/4 for two-sided
/// layouts and 1/2 for left-only layouts.
pub fn transition_point(n: usize, eps: f64, sigma: f64, layout: Layout) -> Result<f64> {
    if n < 8 {
        return Err(Error::InvalidParameter(format!("N={n} must be >= 8")));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps={eps} must be > 0")));
    }
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma={sigma} must be > 0"
        )));
    }
    Ok((sigma * eps * (n as f64).ln()).min(layout.lambda_cap()))
}

/// Graded point sequence on [0,1] with N cells.
#[derive(Debug, Clone)]
pub struct Mesh1D {
    pub points: Vec<f64>,
    pub n: usize,
    pub eps: f64,
    pub sigma: f64,
    pub lambda: f64,
    pub family: MeshFamily,
    pub layout: Layout,
    /// True when σ ε ln N exceeded the cap and the mesh degraded to a
    /// (quasi-)uniform one.
    pub capped: bool,
}

impl Mesh1D {
    pub fn width(&self, i: usize) -> f64 {
        self.points[i + 1] - self.points[i]
    }

    /// Whether cell i (0-based) lies in a graded fine band.
    pub fn in_fine_band(&self, i: usize) -> bool {
        match self.layout {
            Layout::TwoSided => i < self.n / 4 || i >= 3 * self.n / 4,
            Layout::LeftOnly => i < self.n / 2,
        }
    }

    pub fn num_cells(&self) -> usize {
        self.n
    }

    /// Plain-text dump: header line then one coordinate per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# family={} N={} eps={:e} sigma={} layout={} lambda={:.16e}",
            self.family.name(),
            self.n,
            self.eps,
            self.sigma,
            self.layout.name(),
            self.lambda
        )
        .unwrap();
        for x in &self.points {
            writeln!(out, "{:.16e}", x).unwrap();
        }
        out
    }
}

/// Builds a 1D S-type mesh.
///
/// Two-sided: graded branches at both ends with N/4 cells each and N/2
/// uniform interior cells. Left-only: N/2 graded cells in [0, λ] and N/2
/// uniform cells in [λ, 1].
pub fn build_mesh_1d(
    n: usize,
    eps: f64,
    sigma: f64,
    family: MeshFamily,
    layout: Layout,
) -> Result<Mesh1D> {
    let div = layout.divisor();
    if n % div != 0 {
        return Err(Error::InvalidParameter(format!(
            "N={n} must be divisible by {div} for the {} layout",
            layout.name()
        )));
    }
    let gen = MeshGenFunction::new(family, n)?;
    let lambda = transition_point(n, eps, sigma, layout)?;
    let capped = sigma * eps * (n as f64).ln() > layout.lambda_cap();
    // With scale = λ / ln N the graded branch reads scale·φ(·); uncapped this
    // equals σε·φ(·) exactly, capped it shrinks the grading onto [0, cap].
    let scale = lambda / (n as f64).ln();
    let nf = n as f64;

    let mut points = vec![0.0; n + 1];
    match layout {
        Layout::TwoSided => {
            for i in 0..=n / 4 {
                points[i] = scale * gen.phi(2.0 * i as f64 / nf);
            }
            for i in n / 4..=n / 2 {
                points[i] = (2.0 * i as f64 / nf) * (1.0 - 2.0 * lambda) - 0.5 + 2.0 * lambda;
            }
            points[n / 4] = lambda;
            points[n / 2] = 0.5;
            for i in n / 2 + 1..=n {
                points[i] = 1.0 - points[n - i];
            }
        }
        Layout::LeftOnly => {
            for i in 0..=n / 2 {
                points[i] = scale * gen.phi(i as f64 / nf);
            }
            for i in n / 2..=n {
                points[i] = lambda + (2.0 * i as f64 / nf - 1.0) * (1.0 - lambda);
            }
            points[n / 2] = lambda;
            points[n] = 1.0;
        }
    }
    points[0] = 0.0;

    let mesh = Mesh1D {
        points,
        n,
        eps,
        sigma,
        lambda,
        family,
        layout,
        capped,
    };
    validate_mesh(&mesh)?;
    Ok(mesh)
}

fn validate_mesh(mesh: &Mesh1D) -> Result<()> {
    let n = mesh.n;
    for i in 0..n {
        if !(mesh.width(i) > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mesh degenerate: h_{} = {:e} <= 0 (N={}, eps={:e}, sigma={})",
                i + 1,
                mesh.width(i),
                n,
                mesh.eps,
                mesh.sigma
            )));
        }
    }
    let coarse_cap = 2.0 / n as f64 * (1.0 + 1e-12);
    for i in 0..n {
        if !mesh.in_fine_band(i) && mesh.width(i) > coarse_cap {
            return Err(Error::InvalidParameter(format!(
                "coarse cell {} width {:e} exceeds 2/N",
                i + 1,
                mesh.width(i)
            )));
        }
    }
    Ok(())
}

/// Summary data for a 1D mesh; `h_fine_max` is the largest fine-band width
/// and `bound_ratio_max` the measured constant in the cellwise width bound
/// h_i <= C σ ε N^{-1} max|ψ'| e^{x_i/(σε)}.
#[derive(Debug, Clone, Copy)]
pub struct MeshStats {
    pub h_fine_max: f64,
    pub h_min: f64,
    pub max_abs_psi_prime: f64,
    pub bound_ratio_max: f64,
    /// min over fine cells of h_i / (ε N^{-1}): the measured lower-spacing
    /// constant from the fourth φ-property.
    pub min_spacing_constant: f64,
}

pub fn mesh_stats(mesh: &Mesh1D) -> MeshStats {
    let gen = MeshGenFunction {
        family: mesh.family,
        n: mesh.n,
    };
    let max_psi = gen.max_abs_psi_prime();
    let nf = mesh.n as f64;
    let mut h_fine_max: f64 = 0.0;
    let mut h_min = f64::INFINITY;
    let mut ratio_max: f64 = 0.0;
    let mut spacing_min = f64::INFINITY;
    for i in 0..mesh.n {
        let h = mesh.width(i);
        h_min = h_min.min(h);
        if mesh.in_fine_band(i) {
            h_fine_max = h_fine_max.max(h);
            // Distance of the cell from its layer edge (0 or 1).
            let x_far = match mesh.layout {
                Layout::TwoSided if i >= 3 * mesh.n / 4 => 1.0 - mesh.points[i],
                _ => mesh.points[i + 1],
            };
            let bound = mesh.sigma * mesh.eps / nf * max_psi * (x_far / (mesh.sigma * mesh.eps)).exp();
            if bound.is_finite() && bound > 0.0 {
                ratio_max = ratio_max.max(h / bound);
            }
            spacing_min = spacing_min.min(h / (mesh.eps / nf));
        }
    }
    MeshStats {
        h_fine_max,
        h_min,
        max_abs_psi_prime: max_psi,
        bound_ratio_max: ratio_max,
        min_spacing_constant: spacing_min,
    }
}

/// Layer classification for a tensor-product cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTag {
    Coarse,
    LayerX,
    LayerY,
    Corner,
}

/// Axis-aligned cell geometry.
#[derive(Debug, Clone, Copy)]
pub struct CellGeom {
    pub x0: f64,
    pub y0: f64,
    pub hx: f64,
    pub hy: f64,
}

/// Tensor product of two 1D meshes; cell (i,j) spans
/// (x_i, x_{i+1}) × (y_j, y_{j+1}) and has linear index j·Nx + i.
#[derive(Debug, Clone)]
pub struct TensorMesh2D {
    pub mesh_x: Mesh1D,
    pub mesh_y: Mesh1D,
    pub tags: Vec<RegionTag>,
}

pub fn build_tensor_mesh(mesh_x: Mesh1D, mesh_y: Mesh1D) -> TensorMesh2D {
    let nx = mesh_x.n;
    let ny = mesh_y.n;
    let mut tags = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let fy = mesh_y.in_fine_band(j);
        for i in 0..nx {
            let fx = mesh_x.in_fine_band(i);
            tags.push(match (fx, fy) {
                (true, true) => RegionTag::Corner,
                (true, false) => RegionTag::LayerX,
                (false, true) => RegionTag::LayerY,
                (false, false) => RegionTag::Coarse,
            });
        }
    }
    TensorMesh2D {
        mesh_x,
        mesh_y,
        tags,
    }
}

impl TensorMesh2D {
    pub fn nx(&self) -> usize {
        self.mesh_x.n
    }

    pub fn ny(&self) -> usize {
        self.mesh_y.n
    }

    pub fn num_cells(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn cell_index(&self, i: usize, j: usize) -> usize {
        j * self.nx() + i
    }

    pub fn cell(&self, i: usize, j: usize) -> CellGeom {
        CellGeom {
            x0: self.mesh_x.points[i],
            y0: self.mesh_y.points[j],
            hx: self.mesh_x.width(i),
            hy: self.mesh_y.width(j),
        }
    }

    pub fn tag(&self, i: usize, j: usize) -> RegionTag {
        self.tags[self.cell_index(i, j)]
    }

    /// Dump of both axis meshes, one section per axis.
    pub fn dump(&self) -> String {
        format!("{}\n{}", self.mesh_x.dump(), self.mesh_y.dump())
    }
}
