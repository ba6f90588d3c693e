//! Multi-dimensional complex FFTs over axis-1-fastest layouts.

use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

pub(crate) fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    let mut p = planner().lock().unwrap_or_else(|e| e.into_inner());
    p.plan_fft(len, direction)
}

/// In-place transform along every axis. The inverse is normalized by `1/N`.
pub(crate) fn fft_nd(data: &mut [Complex64], shape: &[usize], inverse: bool) {
    let direction = if inverse {
        FftDirection::Inverse
    } else {
        FftDirection::Forward
    };
    let mut stride = 1;
    for &m in shape {
        fft_axis(data, m, stride, &plan(m, direction));
        stride *= m;
    }
    if inverse {
        let s = 1.0 / data.len() as f64;
        data.iter_mut().for_each(|v| *v *= s);
    }
}

/// Transforms every line of length `m` and spacing `stride`.
pub(crate) fn fft_axis(data: &mut [Complex64], m: usize, stride: usize, fft: &Arc<dyn Fft<f64>>) {
    let block = m * stride;
    if stride == 1 {
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(data, &mut scratch);
        return;
    }
    let work = |chunk: &mut [Complex64]| {
        // Gather the block transposed so every line is contiguous.
        let mut lines = vec![Complex64::default(); block];
        for i in 0..m {
            for s in 0..stride {
                lines[s * m + i] = chunk[i * stride + s];
            }
        }
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(&mut lines, &mut scratch);
        for i in 0..m {
            for s in 0..stride {
                chunk[i * stride + s] = lines[s * m + i];
            }
        }
    };
    if data.len() > block && data.len() >= 1 << 14 {
        data.par_chunks_mut(block).for_each(work);
    } else {
        data.chunks_mut(block).for_each(work);
    }
}

pub(crate) fn to_complex(data: &[f64]) -> Vec<Complex64> {
    data.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}
