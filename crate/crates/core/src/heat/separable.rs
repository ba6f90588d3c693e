//! Tensor-product fields `c Π_k φ_k(x_k)` on truncated grids. The heat flow
//! and mixed norms factor over axes, so very large grids stay cheap.

use super::evolve::{check_resolved, convolve_lines, derivative_line_kernel, gaussian_line_kernel};
use super::HeatFlow;
use crate::error::{Error, Result};
use crate::exponents::MixedExponents;
use crate::field::ScalarField;
use crate::grid::TensorGrid;
use crate::norm::{mixed_norm_raw, tail_fractions_raw, NormEstimate};

#[derive(Clone, Debug, PartialEq)]
pub struct SeparableField {
    grid: TensorGrid,
    amplitude: f64,
    factors: Vec<Vec<f64>>,
}

/// Dense expansion limit for [`SeparableField::to_dense`].
const DENSE_LIMIT: usize = 1 << 24;

impl SeparableField {
    pub fn new(grid: TensorGrid, amplitude: f64, factors: Vec<Vec<f64>>) -> Result<Self> {
        if grid.is_periodic() {
            return Err(Error::InvalidParameter(
                "separable fields live on truncated grids".into(),
            ));
        }
        if factors.len() != grid.n() {
            return Err(Error::DimensionMismatch {
                expected: grid.n(),
                got: factors.len(),
            });
        }
        for (k, f) in factors.iter().enumerate() {
            if f.len() != grid.count(k) {
                return Err(Error::DimensionMismatch {
                    expected: grid.count(k),
                    got: f.len(),
                });
            }
            if let Some(i) = f.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite(i));
            }
        }
        if !amplitude.is_finite() {
            return Err(Error::NonFinite(0));
        }
        Ok(Self {
            grid,
            amplitude,
            factors,
        })
    }

    /// Samples `φ_k` at the nodes of axis `k`.
    pub fn from_fns(grid: &TensorGrid, factor: impl Fn(usize, f64) -> f64) -> Result<Self> {
        let factors = (0..grid.n())
            .map(|k| grid.axis_nodes(k).into_iter().map(|x| factor(k, x)).collect())
            .collect();
        Self::new(grid.clone(), 1.0, factors)
    }

    pub fn grid(&self) -> &TensorGrid {
        &self.grid
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn factor(&self, axis: usize) -> &[f64] {
        &self.factors[axis]
    }

    pub fn to_dense(&self) -> Result<ScalarField> {
        if self.grid.len() > DENSE_LIMIT {
            return Err(Error::InvalidParameter(format!(
                "{} nodes exceed the dense expansion limit",
                self.grid.len()
            )));
        }
        let n = self.grid.n();
        let mut idx = vec![0usize; n];
        let data = (0..self.grid.len())
            .map(|flat| {
                self.grid.multi_index(flat, &mut idx);
                (0..n).fold(self.amplitude, |acc, k| acc * self.factors[k][idx[k]])
            })
            .collect();
        ScalarField::new(self.grid.clone(), data)
    }

    fn evolve_with(&self, t: f64, derivative_axis: Option<usize>) -> Result<Self> {
        check_resolved(&self.grid, t)?;
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let (m, h) = (self.grid.count(k), self.grid.spacing(k));
                let kernel = if derivative_axis == Some(k) {
                    derivative_line_kernel(t, h, m)
                } else {
                    gaussian_line_kernel(t, h, m)
                };
                convolve_lines(f, m, 1, h, &kernel)
            })
            .collect();
        Self::new(self.grid.clone(), self.amplitude, factors)
    }

    fn axis_grid(&self, k: usize) -> Result<TensorGrid> {
        TensorGrid::new(
            vec![self.grid.half_width(k)],
            vec![self.grid.count(k)],
            self.grid.boundary(),
        )
    }
}

impl HeatFlow for SeparableField {
    fn heat_evolve(&self, t: f64) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!("invalid time {t}")));
        }
        if t == 0.0 {
            return Ok(self.clone());
        }
        self.evolve_with(t, None)
    }

    fn heat_evolve_derivative(&self, t: f64, axis: usize) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!("invalid time {t}")));
        }
        self.grid.check_axis(axis)?;
        self.evolve_with(t, Some(axis))
    }

    /// The mixed norm of a tensor product is the product of 1D norms.
    fn norm_estimate(&self, p: &MixedExponents) -> Result<NormEstimate> {
        if p.n() != self.grid.n() {
            return Err(Error::DimensionMismatch {
                expected: self.grid.n(),
                got: p.n(),
            });
        }
        let mut value = self.amplitude.abs();
        let mut tail = Vec::with_capacity(self.grid.n());
        for (k, f) in self.factors.iter().enumerate() {
            let g = self.axis_grid(k)?;
            value *= mixed_norm_raw(&g, f, &MixedExponents::new(vec![p.get(k)])?);
            tail.push(tail_fractions_raw(&g, f)[0]);
        }
        Ok(NormEstimate {
            value,
            tail_fraction: tail,
        })
    }

    fn distance(&self, other: &Self, p: &MixedExponents) -> Result<f64> {
        crate::norm::mixed_norm(&self.to_dense()?.sub(&other.to_dense()?)?, p)
    }
}
