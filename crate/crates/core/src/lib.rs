//! Mixed-norm Lebesgue analysis on tensor grids and a Picard laboratory for
//! Navier-Stokes mild solutions.
//!
//! Axis 1 is the innermost integration axis and the fastest-varying index in
//! memory. Truncated grids approximate whole-space operators; periodic grids
//! carry the spectral operators and the mild solver.

pub mod anisotropic;
pub mod conv;
pub mod error;
pub mod exponents;
pub mod field;
mod fft;
pub mod flows;
pub mod grid;
pub mod heat;
pub mod io;
pub mod mild;
pub mod norm;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use exponents::{Exponent, MixedExponents};
pub use field::{Gradient, ScalarField, VectorField};
pub use grid::{Boundary, TensorGrid};
