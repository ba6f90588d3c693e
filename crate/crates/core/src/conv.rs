//! Zero-padded linear convolution on truncated grids and the Young checker.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponents::MixedExponents;
use crate::fft::{fft_nd, to_complex};
use crate::field::ScalarField;
use crate::norm::{mixed_norm, ratio, tail_fractions};

/// Default cap on the boundary-slab mass share of each convolution input.
pub const DEFAULT_TAIL_THRESHOLD: f64 = 1e-6;

/// `(f * g)(x_i) ≈ Σ_j f(x_j) g(x_i - x_j) Π h_k` on the nodes of the shared grid.
pub fn convolve(f: &ScalarField, g: &ScalarField) -> Result<ScalarField> {
    convolve_with_threshold(f, g, DEFAULT_TAIL_THRESHOLD)
}

pub fn convolve_with_threshold(
    f: &ScalarField,
    g: &ScalarField,
    tail_threshold: f64,
) -> Result<ScalarField> {
    f.check_same_grid(g)?;
    for field in [f, g] {
        for (axis, &fraction) in tail_fractions(field).iter().enumerate() {
            if fraction > tail_threshold {
                return Err(Error::TailMass {
                    axis,
                    fraction,
                    threshold: tail_threshold,
                });
            }
        }
    }
    let grid = f.grid();
    let counts = grid.counts();
    let padded: Vec<usize> = counts.iter().map(|m| 2 * m).collect();
    let mut a = pad(f.data(), counts, &padded);
    let mut b = pad(g.data(), counts, &padded);
    fft_nd(&mut a, &padded, false);
    fft_nd(&mut b, &padded, false);
    a.iter_mut().zip(&b).for_each(|(x, y)| *x *= y);
    fft_nd(&mut a, &padded, true);

    // Node x_i pairs with padded index i + m/2 because x_0 = -L = -(m/2) h.
    let vol = grid.cell_volume();
    let n = grid.n();
    let mut idx = vec![0usize; n];
    let out = (0..grid.len())
        .map(|flat| {
            grid.multi_index(flat, &mut idx);
            let mut p = 0;
            for k in (0..n).rev() {
                p = p * padded[k] + idx[k] + counts[k] / 2;
            }
            a[p].re * vol
        })
        .collect();
    ScalarField::new(grid.clone(), out)
}

fn pad(data: &[f64], counts: &[usize], padded: &[usize]) -> Vec<Complex64> {
    let total: usize = padded.iter().product();
    let mut out = vec![Complex64::default(); total];
    let n = counts.len();
    let mut idx = vec![0usize; n];
    let src = to_complex(data);
    for (flat, v) in src.into_iter().enumerate() {
        let mut rem = flat;
        for k in 0..n {
            idx[k] = rem % counts[k];
            rem /= counts[k];
        }
        let mut p = 0;
        for k in (0..n).rev() {
            p = p * padded[k] + idx[k];
        }
        out[p] = v;
    }
    out
}

/// Checks `1/p_k + 1 = 1/q_k + 1/r_k` per axis to within `1e-12`.
pub fn check_young_exponents(
    p: &MixedExponents,
    q: &MixedExponents,
    r: &MixedExponents,
) -> Result<()> {
    for e in [q, r] {
        if e.n() != p.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                got: e.n(),
            });
        }
    }
    for k in 0..p.n() {
        let lhs = p.get(k).reciprocal() + 1.0;
        let rhs = q.get(k).reciprocal() + r.get(k).reciprocal();
        if (lhs - rhs).abs() > 1e-12 {
            return Err(Error::ExponentIdentity { axis: k, lhs, rhs });
        }
    }
    Ok(())
}

/// `‖f * g‖_p / (‖f‖_q ‖g‖_r)`, with `0/0 = 0`.
pub fn young_ratio(
    f: &ScalarField,
    g: &ScalarField,
    p: &MixedExponents,
    q: &MixedExponents,
    r: &MixedExponents,
) -> Result<f64> {
    check_young_exponents(p, q, r)?;
    let conv = convolve(f, g)?;
    let num = mixed_norm(&conv, p)?;
    let den = mixed_norm(f, q)? * mixed_norm(g, r)?;
    Ok(ratio(num, den))
}
