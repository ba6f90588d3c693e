//! Axis-by-axis heat evolution on truncated grids.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftDirection;

use super::kernel::{derivative, gaussian};
use crate::error::{Error, Result};
use crate::fft::plan;
use crate::grid::TensorGrid;

/// Samples `w[d + radius]` of a kernel at offsets `d h`, `|d| <= radius`.
#[derive(Clone, Debug)]
pub(crate) struct LineKernel {
    pub weights: Vec<f64>,
    pub radius: usize,
}

/// `g_t` at which `g_t(s)/g_t(0) < 1e-18`.
fn cutoff_radius(t: f64, h: f64) -> usize {
    ((4.0 * t * 41.5).sqrt() / h).ceil() as usize + 1
}

/// `g_t` sampled with spacing `h`, scaled to unit discrete mass
/// `Σ_d w_d h = 1` over the whole lattice, then cut to `|d| < m`.
pub(crate) fn gaussian_line_kernel(t: f64, h: f64, m: usize) -> LineKernel {
    let full = cutoff_radius(t, h);
    let samples: Vec<f64> = (0..=full).map(|d| gaussian(t, d as f64 * h)).collect();
    let mass = h * (samples[0] + 2.0 * samples[1..].iter().sum::<f64>());
    build(full.min(m - 1), |d| samples[d.unsigned_abs()] / mass)
}

/// `h_t` sampled with spacing `h`, unnormalized.
pub(crate) fn derivative_line_kernel(t: f64, h: f64, m: usize) -> LineKernel {
    let radius = cutoff_radius(t, h).min(m - 1);
    build(radius, |d| derivative(t, d as f64 * h))
}

fn build(radius: usize, f: impl Fn(isize) -> f64) -> LineKernel {
    let r = radius as isize;
    LineKernel {
        weights: (-r..=r).map(f).collect(),
        radius,
    }
}

const DIRECT_TAPS: usize = 96;

/// Zero-extended linear convolution of every axis line with `kernel`, scaled
/// by `h`: `out_i = h Σ_d w_d u_{i-d}`.
pub(crate) fn convolve_lines(
    data: &[f64],
    m: usize,
    stride: usize,
    h: f64,
    kernel: &LineKernel,
) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    let block = m * stride;
    if kernel.weights.len() <= DIRECT_TAPS {
        let r = kernel.radius as isize;
        let work = |(src, dst): (&[f64], &mut [f64])| {
            for s in 0..stride {
                for i in 0..m as isize {
                    let lo = (i - (m as isize - 1)).max(-r);
                    let hi = i.min(r);
                    let mut acc = 0.0;
                    for d in lo..=hi {
                        acc += kernel.weights[(d + r) as usize] * src[(i - d) as usize * stride + s];
                    }
                    dst[i as usize * stride + s] = acc * h;
                }
            }
        };
        if data.len() >= 1 << 14 {
            data.par_chunks(block).zip(out.par_chunks_mut(block)).for_each(work);
        } else {
            data.chunks(block).zip(out.chunks_mut(block)).for_each(work);
        }
        return out;
    }

    let size = 2 * m;
    let fwd = plan(size, FftDirection::Forward);
    let inv = plan(size, FftDirection::Inverse);
    let mut spectrum = vec![Complex64::default(); size];
    let r = kernel.radius as isize;
    for d in -r..=r {
        spectrum[d.rem_euclid(size as isize) as usize] =
            Complex64::new(kernel.weights[(d + r) as usize], 0.0);
    }
    fwd.process(&mut spectrum);
    let scale = h / size as f64;
    let work = |(src, dst): (&[f64], &mut [f64])| {
        let mut line = vec![Complex64::default(); size];
        let mut scratch = vec![Complex64::default(); fwd.get_inplace_scratch_len()];
        for s in 0..stride {
            for (i, v) in line.iter_mut().enumerate() {
                *v = if i < m {
                    Complex64::new(src[i * stride + s], 0.0)
                } else {
                    Complex64::default()
                };
            }
            fwd.process_with_scratch(&mut line, &mut scratch);
            line.iter_mut().zip(&spectrum).for_each(|(a, b)| *a *= b);
            inv.process_with_scratch(&mut line, &mut scratch);
            for i in 0..m {
                dst[i * stride + s] = line[i].re * scale;
            }
        }
    };
    if data.len() > block {
        data.par_chunks(block).zip(out.par_chunks_mut(block)).for_each(work);
    } else {
        data.chunks(block).zip(out.chunks_mut(block)).for_each(work);
    }
    out
}

pub(crate) fn check_resolved(grid: &TensorGrid, t: f64) -> Result<()> {
    for k in 0..grid.n() {
        let h2 = grid.spacing(k).powi(2);
        if t < h2 {
            return Err(Error::KernelUnderResolved { axis: k, t, h2 });
        }
    }
    Ok(())
}

/// `e^{tΔ}` (or `∂_j e^{tΔ}` when `derivative_axis` is set) on a truncated grid.
pub(crate) fn evolve_truncated(
    grid: &TensorGrid,
    data: &[f64],
    t: f64,
    derivative_axis: Option<usize>,
) -> Result<Vec<f64>> {
    check_resolved(grid, t)?;
    let mut cur = data.to_vec();
    for k in 0..grid.n() {
        let (m, h) = (grid.count(k), grid.spacing(k));
        let kernel = if derivative_axis == Some(k) {
            derivative_line_kernel(t, h, m)
        } else {
            gaussian_line_kernel(t, h, m)
        };
        cur = convolve_lines(&cur, m, grid.stride(k), h, &kernel);
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_and_fft_paths_agree() {
        let m = 64;
        let data: Vec<f64> = (0..m * 3).map(|i| ((i * 7919) % 101) as f64 / 101.0).collect();
        let k = derivative_line_kernel(4.0, 0.5, m);
        assert!(k.weights.len() > DIRECT_TAPS);
        let fft = convolve_lines(&data, m, 3, 0.5, &k);
        let direct: Vec<f64> = (0..data.len())
            .map(|flat| {
                let (i, s) = ((flat / 3) as isize, flat % 3);
                let r = k.radius as isize;
                (-r..=r)
                    .filter(|d| (0..m as isize).contains(&(i - d)))
                    .map(|d| k.weights[(d + r) as usize] * data[(i - d) as usize * 3 + s])
                    .sum::<f64>()
                    * 0.5
            })
            .collect();
        for (a, b) in fft.iter().zip(&direct) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn discrete_gaussian_has_unit_mass() {
        let k = gaussian_line_kernel(0.3, 0.1, 4096);
        let mass: f64 = k.weights.iter().sum::<f64>() * 0.1;
        assert!((mass - 1.0).abs() < 1e-14);
    }
}
