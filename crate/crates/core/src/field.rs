//! Sampled scalar and vector fields on a [`TensorGrid`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::TensorGrid;

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    grid: TensorGrid,
    data: Vec<f64>,
}

impl ScalarField {
    /// Samples are flat with axis 1 fastest; all must be finite.
    pub fn new(grid: TensorGrid, data: Vec<f64>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: data.len(),
            });
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, data })
    }

    pub(crate) fn from_raw(grid: TensorGrid, data: Vec<f64>) -> Self {
        debug_assert_eq!(grid.len(), data.len());
        Self { grid, data }
    }

    pub fn zeros(grid: &TensorGrid) -> Self {
        Self::from_raw(grid.clone(), vec![0.0; grid.len()])
    }

    pub fn constant(grid: &TensorGrid, value: f64) -> Self {
        Self::from_raw(grid.clone(), vec![value; grid.len()])
    }

    /// Samples `f` at every node; `f` receives the node coordinates.
    pub fn from_fn<F>(grid: &TensorGrid, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let n = grid.n();
        let data: Vec<f64> = (0..grid.len())
            .into_par_iter()
            .map_init(
                || vec![0.0; n],
                |x, i| {
                    grid.point(i, x);
                    f(x)
                },
            )
            .collect();
        Self::new(grid.clone(), data)
    }

    pub fn grid(&self) -> &TensorGrid {
        &self.grid
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.grid.clone(), self.data.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_raw(self.grid.clone(), self.data.iter().map(|&v| c * v).collect())
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_same_grid(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Self::new(self.grid.clone(), data)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// `Σ f · Π h_k`.
    pub fn integral(&self) -> f64 {
        self.data.iter().sum::<f64>() * self.grid.cell_volume()
    }

    /// Discrete `L_2` inner product with cell weights.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum::<f64>()
            * self.grid.cell_volume())
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    pub fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }
}

/// Components share one grid. Velocity fields have `n` components.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    components: Vec<ScalarField>,
}

impl VectorField {
    pub fn new(components: Vec<ScalarField>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidParameter("vector field without components".into()))?;
        for c in &components[1..] {
            first.check_same_grid(c)?;
        }
        Ok(Self { components })
    }

    pub fn zeros(grid: &TensorGrid, count: usize) -> Self {
        Self {
            components: (0..count).map(|_| ScalarField::zeros(grid)).collect(),
        }
    }

    pub fn from_fns<F>(grid: &TensorGrid, count: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, &[f64]) -> f64 + Sync,
    {
        let components = (0..count)
            .map(|c| ScalarField::from_fn(grid, |x| f(c, x)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn grid(&self) -> &TensorGrid {
        self.components[0].grid()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, i: usize) -> &ScalarField {
        &self.components[i]
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn into_components(self) -> Vec<ScalarField> {
        self.components
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64 + Copy) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.zip_with(b, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { components })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.max_abs())
    }

    /// `(Σ_i ∫ u_i²)^{1/2}` with cell weights.
    pub fn l2_norm(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.inner(c).unwrap_or(0.0))
            .sum::<f64>()
            .sqrt()
    }
}

/// The `n × n` array of `∂_j u_i`, stored at `i * n + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gradient {
    n: usize,
    entries: Vec<ScalarField>,
}

impl Gradient {
    pub fn new(n: usize, entries: Vec<ScalarField>) -> Result<Self> {
        if entries.len() != n * n || n == 0 {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        for e in &entries[1..] {
            entries[0].check_same_grid(e)?;
        }
        Ok(Self { n, entries })
    }

    pub fn zeros(grid: &TensorGrid) -> Self {
        let n = grid.n();
        Self {
            n,
            entries: (0..n * n).map(|_| ScalarField::zeros(grid)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> &TensorGrid {
        self.entries[0].grid()
    }

    /// `∂_j u_i`.
    pub fn get(&self, i: usize, j: usize) -> &ScalarField {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[ScalarField] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<ScalarField> {
        self.entries
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, entries })
    }
}
