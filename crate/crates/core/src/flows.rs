//! Reference velocity fields on periodic boxes.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::grid::TensorGrid;
use crate::rng::SplitMix64;
use crate::spectral::leray_project;

fn check_dim(grid: &TensorGrid, n: usize) -> Result<()> {
    if grid.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: grid.n(),
        });
    }
    Ok(())
}

/// `(sin x₁ cos x₂, -cos x₁ sin x₂)`; steady-Euler pressure `¼(cos 2x₁ + cos 2x₂)`.
pub fn taylor_green_2d(grid: &TensorGrid) -> Result<VectorField> {
    check_dim(grid, 2)?;
    VectorField::from_fns(grid, 2, |c, x| match c {
        0 => x[0].sin() * x[1].cos(),
        _ => -x[0].cos() * x[1].sin(),
    })
}

/// `(cos x₁ sin x₂, -sin x₁ cos x₂)`; steady-Euler pressure `-¼(cos 2x₁ + cos 2x₂)`.
pub fn taylor_green_2d_rotated(grid: &TensorGrid) -> Result<VectorField> {
    check_dim(grid, 2)?;
    VectorField::from_fns(grid, 2, |c, x| match c {
        0 => x[0].cos() * x[1].sin(),
        _ => -x[0].sin() * x[1].cos(),
    })
}

/// `(sin x₁ cos x₂ cos x₃, -cos x₁ sin x₂ cos x₃, 0)`.
pub fn taylor_green_3d(grid: &TensorGrid) -> Result<VectorField> {
    check_dim(grid, 3)?;
    VectorField::from_fns(grid, 3, |c, x| match c {
        0 => x[0].sin() * x[1].cos() * x[2].cos(),
        1 => -x[0].cos() * x[1].sin() * x[2].cos(),
        _ => 0.0,
    })
}

/// The 2D vortex extended to three components and constant along `x₃`.
pub fn taylor_green_2d_extruded(grid: &TensorGrid) -> Result<VectorField> {
    check_dim(grid, 3)?;
    VectorField::from_fns(grid, 3, |c, x| match c {
        0 => x[0].sin() * x[1].cos(),
        1 => -x[0].cos() * x[1].sin(),
        _ => 0.0,
    })
}

/// Arnold-Beltrami-Childress flow with unit coefficients.
pub fn abc_flow(grid: &TensorGrid) -> Result<VectorField> {
    check_dim(grid, 3)?;
    VectorField::from_fns(grid, 3, |c, x| match c {
        0 => x[2].sin() + x[1].cos(),
        1 => x[0].sin() + x[2].cos(),
        _ => x[1].sin() + x[0].cos(),
    })
}

/// Random real trigonometric polynomial with integer modes `|κ_k| <= band`
/// on each axis; coefficients uniform in `[-1, 1]`.
pub fn random_band_limited(
    grid: &TensorGrid,
    band: usize,
    rng: &mut SplitMix64,
) -> Result<ScalarField> {
    let n = grid.n();
    for k in 0..n {
        if 2 * band >= grid.count(k) {
            return Err(Error::InvalidParameter(format!(
                "band {band} not resolved on axis {k}"
            )));
        }
    }
    let side = 2 * band + 1;
    let total = side.pow(n as u32);
    let terms: Vec<(Vec<f64>, f64, f64)> = (0..total)
        .map(|mut flat| {
            let kappa: Vec<f64> = (0..n)
                .map(|k| {
                    let i = flat % side;
                    flat /= side;
                    (i as f64 - band as f64) * PI / grid.half_width(k)
                })
                .collect();
            (kappa, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        })
        .collect();
    ScalarField::from_fn(grid, |x| {
        terms
            .iter()
            .map(|(kappa, a, b)| {
                let phase: f64 = kappa.iter().zip(x).map(|(k, x)| k * x).sum();
                a * phase.cos() + b * phase.sin()
            })
            .sum()
    })
}

/// Leray projection of independent band-limited components.
pub fn random_divergence_free(
    grid: &TensorGrid,
    band: usize,
    rng: &mut SplitMix64,
) -> Result<VectorField> {
    let comps = (0..grid.n())
        .map(|_| random_band_limited(grid, band, rng))
        .collect::<Result<Vec<_>>>()?;
    leray_project(&VectorField::new(comps)?)
}

/// `Π_k exp(-x_k² / (4 a_k))`.
pub fn gaussian_bump(grid: &TensorGrid, widths: &[f64]) -> Result<ScalarField> {
    check_dim(grid, widths.len())?;
    ScalarField::from_fn(grid, |x| {
        x.iter()
            .zip(widths)
            .map(|(x, a)| (-x * x / (4.0 * a)).exp())
            .product()
    })
}
