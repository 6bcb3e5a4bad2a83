//! Reference-cell machinery on K̂ = [0,1]²: scalar Q_k bases, vector
//! RT_k/BDM_k bases with their degree-of-freedom functionals, and the
//! contravariant Piola map to physical axis-aligned cells.

mod flux;
mod scalar;

pub use flux::{flux_reference_basis, FluxFamily, FluxTabulation, ReferenceFlux};
pub use scalar::{scalar_reference_basis, ReferenceScalar};

use crate::error::{Error, Result};

/// Contravariant Piola transform for the diagonal affine map onto a
/// physical cell of size h_x × h_y. Normal traces are preserved so that
/// edge moments glue across cells of different sizes.
#[derive(Debug, Clone, Copy)]
pub struct PiolaMap {
    pub hx: f64,
    pub hy: f64,
}

impl PiolaMap {
    pub fn new(hx: f64, hy: f64) -> Result<Self> {
        if !(hx > 0.0 && hy > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "degenerate cell {hx} x {hy}"
            )));
        }
        Ok(Self { hx, hy })
    }

    /// Physical vector value from a reference value.
    #[inline]
    pub fn value(&self, v_ref: [f64; 2]) -> [f64; 2] {
        [v_ref[0] / self.hy, v_ref[1] / self.hx]
    }

    /// Physical divergence from the reference divergence.
    #[inline]
    pub fn divergence(&self, div_ref: f64) -> f64 {
        div_ref / (self.hx * self.hy)
    }

    /// Reference (pulled-back) vector from a physical value; inverse of
    /// `value`. Canonical interpolation applies the reference DOF
    /// functionals to this pullback.
    #[inline]
    pub fn pullback(&self, v_phys: [f64; 2]) -> [f64; 2] {
        [v_phys[0] * self.hy, v_phys[1] * self.hx]
    }
}
