//! Mixed H(div)-conforming finite elements for the singularly perturbed
//! reaction-diffusion problem -ε²Δu + cu = f on (0,1)², discretised as a
//! first-order system on layer-adapted S-type tensor meshes, with error
//! measurement in balanced and unbalanced triple norms.

pub mod error;
pub mod mesh;
pub mod poly;
pub mod quadrature;
pub mod refelem;

pub use error::{Error, Result};
