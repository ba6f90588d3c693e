//! Uniform tensor grids on `Π [-L_k, L_k)` with nodes `x_i = -L_k + i h_k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Zero extension outside the box; stands in for whole space.
    Truncated,
    Periodic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridSpec")]
pub struct TensorGrid {
    half_widths: Vec<f64>,
    counts: Vec<usize>,
    boundary: Boundary,
}

#[derive(Deserialize)]
struct GridSpec {
    half_widths: Vec<f64>,
    counts: Vec<usize>,
    boundary: Boundary,
}

impl TryFrom<GridSpec> for TensorGrid {
    type Error = Error;

    fn try_from(g: GridSpec) -> Result<Self> {
        Self::new(g.half_widths, g.counts, g.boundary)
    }
}

impl TensorGrid {
    pub fn new(half_widths: Vec<f64>, counts: Vec<usize>, boundary: Boundary) -> Result<Self> {
        if half_widths.is_empty() || half_widths.len() != counts.len() {
            return Err(Error::InvalidGrid(format!(
                "{} half-widths for {} counts",
                half_widths.len(),
                counts.len()
            )));
        }
        for (k, (&l, &m)) in half_widths.iter().zip(&counts).enumerate() {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::InvalidGrid(format!("axis {k}: half-width {l}")));
            }
            if m < 4 || m % 2 != 0 {
                return Err(Error::InvalidGrid(format!(
                    "axis {k}: count {m} must be even and at least 4"
                )));
            }
        }
        Ok(Self {
            half_widths,
            counts,
            boundary,
        })
    }

    /// Same half-width and count on every axis.
    pub fn cube(n: usize, half_width: f64, count: usize, boundary: Boundary) -> Result<Self> {
        Self::new(vec![half_width; n], vec![count; n], boundary)
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, axis: usize) -> usize {
        self.counts[axis]
    }

    pub fn half_widths(&self) -> &[f64] {
        &self.half_widths
    }

    pub fn half_width(&self, axis: usize) -> f64 {
        self.half_widths[axis]
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn is_periodic(&self) -> bool {
        self.boundary == Boundary::Periodic
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        2.0 * self.half_widths[axis] / self.counts[axis] as f64
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.n()).map(|k| self.spacing(k)).product()
    }

    pub fn node(&self, axis: usize, i: usize) -> f64 {
        -self.half_widths[axis] + i as f64 * self.spacing(axis)
    }

    pub fn axis_nodes(&self, axis: usize) -> Vec<f64> {
        (0..self.counts[axis]).map(|i| self.node(axis, i)).collect()
    }

    /// Distance in memory between neighbours along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.counts[..axis].iter().product()
    }

    pub fn multi_index(&self, mut flat: usize, out: &mut [usize]) {
        for (k, &m) in self.counts.iter().enumerate() {
            out[k] = flat % m;
            flat /= m;
        }
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        let mut flat = 0;
        for k in (0..self.n()).rev() {
            flat = flat * self.counts[k] + idx[k];
        }
        flat
    }

    pub fn point(&self, flat: usize, out: &mut [f64]) {
        let mut rem = flat;
        for (k, &m) in self.counts.iter().enumerate() {
            out[k] = self.node(k, rem % m);
            rem /= m;
        }
    }

    pub fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.n() {
            return Err(Error::AxisOutOfRange { axis, n: self.n() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_or_tiny_counts() {
        assert!(TensorGrid::new(vec![1.0], vec![5], Boundary::Truncated).is_err());
        assert!(TensorGrid::new(vec![1.0], vec![2], Boundary::Truncated).is_err());
        assert!(TensorGrid::new(vec![1.0, 1.0], vec![4], Boundary::Truncated).is_err());
        assert!(TensorGrid::new(vec![0.0], vec![4], Boundary::Truncated).is_err());
    }

    #[test]
    fn indexing_is_axis_one_fastest() {
        let g = TensorGrid::new(vec![1.0, 2.0, 3.0], vec![4, 6, 8], Boundary::Periodic).unwrap();
        assert_eq!(g.stride(0), 1);
        assert_eq!(g.stride(1), 4);
        assert_eq!(g.stride(2), 24);
        let mut idx = [0; 3];
        g.multi_index(1 + 4 * 5 + 24 * 7, &mut idx);
        assert_eq!(idx, [1, 5, 7]);
        assert_eq!(g.flat_index(&idx), 1 + 4 * 5 + 24 * 7);
        assert_eq!(g.node(1, 3), -2.0 + 3.0 * (4.0 / 6.0));
    }
}
