//! Iterated-quadrature mixed norms and the Hölder and scaling checkers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{Exponent, MixedExponents};
use crate::field::{Gradient, ScalarField, VectorField};
use crate::grid::TensorGrid;

/// A norm value with the per-axis share of `Σ|f|` held by the two outermost
/// slabs at each end of that axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub tail_fraction: Vec<f64>,
}

impl NormEstimate {
    pub fn max_tail_fraction(&self) -> f64 {
        self.tail_fraction.iter().fold(0.0, |m, &v| m.max(v))
    }
}

const PAR_THRESHOLD: usize = 1 << 14;

/// Rectangle-rule `L_p` norm of one line; values are nonnegative.
/// Dividing by the line maximum keeps `|c f|` exactly homogeneous and avoids
/// overflow for large `p`.
fn line_norm(line: &[f64], h: f64, p: Exponent) -> f64 {
    let peak = line.iter().fold(0.0f64, |m, &v| m.max(v));
    if peak == 0.0 {
        return 0.0;
    }
    match p {
        Exponent::Infinite => peak,
        Exponent::Finite(p) if p == 1.0 => line.iter().sum::<f64>() * h,
        Exponent::Finite(p) if p == 2.0 => {
            let s: f64 = line.iter().map(|&v| (v / peak) * (v / peak)).sum();
            peak * (s * h).sqrt()
        }
        Exponent::Finite(p) => {
            let s: f64 = line.iter().map(|&v| (v / peak).powf(p)).sum();
            peak * (s * h).powf(1.0 / p)
        }
    }
}

fn reduce_axis(values: &[f64], m: usize, h: f64, p: Exponent) -> Vec<f64> {
    if values.len() >= PAR_THRESHOLD {
        values.par_chunks(m).map(|c| line_norm(c, h, p)).collect()
    } else {
        values.chunks(m).map(|c| line_norm(c, h, p)).collect()
    }
}

fn check_exponents(grid: &TensorGrid, p: &MixedExponents) -> Result<()> {
    if p.n() != grid.n() {
        return Err(Error::DimensionMismatch {
            expected: grid.n(),
            got: p.n(),
        });
    }
    Ok(())
}

/// Mixed norm of raw samples; axis 1 is integrated first.
pub(crate) fn mixed_norm_raw(grid: &TensorGrid, data: &[f64], p: &MixedExponents) -> f64 {
    let mut cur: Vec<f64> = data.iter().map(|v| v.abs()).collect();
    for k in 0..grid.n() {
        cur = reduce_axis(&cur, grid.count(k), grid.spacing(k), p.get(k));
    }
    debug_assert_eq!(cur.len(), 1);
    cur[0]
}

pub fn mixed_norm(f: &ScalarField, p: &MixedExponents) -> Result<f64> {
    check_exponents(f.grid(), p)?;
    Ok(mixed_norm_raw(f.grid(), f.data(), p))
}

/// `Σ|f|` share of the first two and last two slabs along each axis.
pub fn tail_fractions(f: &ScalarField) -> Vec<f64> {
    tail_fractions_raw(f.grid(), f.data())
}

pub(crate) fn tail_fractions_raw(grid: &TensorGrid, data: &[f64]) -> Vec<f64> {
    let total: f64 = data.iter().map(|v| v.abs()).sum();
    (0..grid.n())
        .map(|k| {
            if total == 0.0 {
                return 0.0;
            }
            let m = grid.count(k);
            let stride = grid.stride(k);
            let edge: f64 = data
                .iter()
                .enumerate()
                .filter(|(i, _)| {
                    let ik = (i / stride) % m;
                    ik < 2 || ik + 2 >= m
                })
                .map(|(_, v)| v.abs())
                .sum();
            edge / total
        })
        .collect()
}

pub fn mixed_norm_estimate(f: &ScalarField, p: &MixedExponents) -> Result<NormEstimate> {
    Ok(NormEstimate {
        value: mixed_norm(f, p)?,
        tail_fraction: tail_fractions(f),
    })
}

/// Bit-identical to [`mixed_norm`] with every exponent equal to `p`.
pub fn plain_lp_norm(f: &ScalarField, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent { axis: 0, value: p });
    }
    let e = MixedExponents::uniform(f.grid().n(), Exponent::from_f64(p))?;
    mixed_norm(f, &e)
}

/// Vector fields aggregate by the maximum over components.
pub fn vector_mixed_norm(v: &VectorField, p: &MixedExponents) -> Result<f64> {
    v.components()
        .iter()
        .try_fold(0.0f64, |m, c| Ok(m.max(mixed_norm(c, p)?)))
}

/// Maximum of the mixed norm over all entries `∂_j u_i`.
pub fn gradient_mixed_norm(g: &Gradient, p: &MixedExponents) -> Result<f64> {
    g.entries()
        .iter()
        .try_fold(0.0f64, |m, c| Ok(m.max(mixed_norm(c, p)?)))
}

/// `0/0` is `0`; a positive numerator over `0` is `∞`.
pub fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// `‖fg‖_{p/(α+β)} / (‖f‖_{p/α} ‖g‖_{p/β})`.
pub fn mixed_holder_ratio(
    f: &ScalarField,
    g: &ScalarField,
    p: &MixedExponents,
    alpha: &[f64],
    beta: &[f64],
) -> Result<f64> {
    check_exponents(f.grid(), p)?;
    f.check_same_grid(g)?;
    for k in 0..p.n() {
        let (a, b) = (alpha[k], beta[k]);
        if !(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0) {
            return Err(Error::SplitOutOfRange {
                axis: k,
                reason: format!("alpha {a}, beta {b} not in (0, 1]"),
            });
        }
        if a + b > p.get(k).value() {
            return Err(Error::SplitOutOfRange {
                axis: k,
                reason: format!("alpha + beta = {} exceeds p = {}", a + b, p.get(k)),
            });
        }
    }
    let sum: Vec<f64> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
    let num = mixed_norm(&f.mul(g)?, &p.divide(&sum)?)?;
    let den = mixed_norm(f, &p.divide(alpha)?)? * mixed_norm(g, &p.divide(beta)?)?;
    Ok(ratio(num, den))
}

/// Tail threshold applied to the rescaled field in the scaling checks.
pub const SCALING_TAIL_THRESHOLD: f64 = 1e-6;

/// `‖λ f(λ·)‖_p / ‖f‖_p` with `f` re-evaluated exactly at the scaled nodes.
pub fn scaling_ratio_analytic<F>(
    grid: &TensorGrid,
    f: F,
    lambda: f64,
    p: &MixedExponents,
) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    check_lambda(lambda)?;
    let base = ScalarField::from_fn(grid, &f)?;
    let scaled = ScalarField::from_fn(grid, |x| {
        let y: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        lambda * f(&y)
    })?;
    check_tail(&base)?;
    check_tail(&scaled)?;
    Ok(ratio(mixed_norm(&scaled, p)?, mixed_norm(&base, p)?))
}

/// As [`scaling_ratio_analytic`] for sampled `f`, using multilinear
/// interpolation and zero extension outside the grid.
pub fn scaling_ratio(f: &ScalarField, lambda: f64, p: &MixedExponents) -> Result<f64> {
    check_lambda(lambda)?;
    check_tail(f)?;
    let grid = f.grid();
    let scaled = ScalarField::from_fn(grid, |x| {
        let y: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        lambda * multilinear(f, &y)
    })?;
    check_tail(&scaled)?;
    Ok(ratio(mixed_norm(&scaled, p)?, mixed_norm(f, p)?))
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "scaling factor {lambda} must be positive"
        )));
    }
    Ok(())
}

fn check_tail(f: &ScalarField) -> Result<()> {
    for (axis, &fraction) in tail_fractions(f).iter().enumerate() {
        if fraction > SCALING_TAIL_THRESHOLD {
            return Err(Error::TailMass {
                axis,
                fraction,
                threshold: SCALING_TAIL_THRESHOLD,
            });
        }
    }
    Ok(())
}

/// Multilinear interpolation of `f` at `y`; zero outside the sampled box.
pub fn multilinear(f: &ScalarField, y: &[f64]) -> f64 {
    let grid = f.grid();
    let n = grid.n();
    let mut base = vec![0usize; n];
    let mut frac = vec![0.0; n];
    for k in 0..n {
        let s = (y[k] + grid.half_width(k)) / grid.spacing(k);
        let m = grid.count(k);
        if !(s >= 0.0) || s > (m - 1) as f64 {
            return 0.0;
        }
        let i = (s.floor() as usize).min(m - 2);
        base[k] = i;
        frac[k] = s - i as f64;
    }
    let mut acc = 0.0;
    let mut idx = vec![0usize; n];
    for corner in 0..(1usize << n) {
        let mut w = 1.0;
        for k in 0..n {
            let bit = (corner >> k) & 1;
            idx[k] = base[k] + bit;
            w *= if bit == 1 { frac[k] } else { 1.0 - frac[k] };
        }
        if w != 0.0 {
            acc += w * f.data()[grid.flat_index(&idx)];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Boundary;

    fn exps(v: &[f64]) -> MixedExponents {
        MixedExponents::from_f64s(v).unwrap()
    }

    #[test]
    fn zero_field_has_zero_norm() {
        let g = TensorGrid::cube(2, 1.0, 8, Boundary::Truncated).unwrap();
        let f = ScalarField::zeros(&g);
        assert_eq!(mixed_norm(&f, &exps(&[3.0, f64::INFINITY])).unwrap(), 0.0);
    }

    #[test]
    fn exponent_count_must_match_grid() {
        let g = TensorGrid::cube(2, 1.0, 8, Boundary::Truncated).unwrap();
        let f = ScalarField::zeros(&g);
        assert!(mixed_norm(&f, &exps(&[2.0])).is_err());
    }

    #[test]
    fn iterated_order_is_axis_one_innermost() {
        // f(x1, x2) = 1 on a 1 x 2 cell block and 2 elsewhere on that row;
        // hand-computed iterated integrals distinguish the two orders.
        let g = TensorGrid::new(vec![1.0, 1.0], vec![4, 4], Boundary::Truncated).unwrap();
        let mut d = vec![0.0; 16];
        d[0] = 1.0; // (i1, i2) = (0, 0)
        d[1] = 1.0; // (1, 0)
        d[4] = 2.0; // (0, 1)
        let f = ScalarField::new(g, d).unwrap();
        let h: f64 = 0.5;
        // inner L1 over x1, outer L_inf over x2
        let v = mixed_norm(&f, &exps(&[1.0, f64::INFINITY])).unwrap();
        assert!((v - 2.0 * h).abs() < 1e-15);
        // inner L_inf over x1, outer L1 over x2
        let w = mixed_norm(&f, &exps(&[f64::INFINITY, 1.0])).unwrap();
        assert!((w - 3.0 * h).abs() < 1e-15);
    }

    #[test]
    fn multilinear_reproduces_affine_functions() {
        let g = TensorGrid::cube(2, 2.0, 8, Boundary::Truncated).unwrap();
        let f = ScalarField::from_fn(&g, |x| 1.0 + 2.0 * x[0] - 3.0 * x[1]).unwrap();
        let y = [0.3, -0.77];
        assert!((multilinear(&f, &y) - (1.0 + 0.6 + 2.31)).abs() < 1e-12);
        assert_eq!(multilinear(&f, &[5.0, 0.0]), 0.0);
    }

    #[test]
    fn holder_rejects_bad_splits() {
        let g = TensorGrid::cube(1, 1.0, 8, Boundary::Truncated).unwrap();
        let f = ScalarField::constant(&g, 1.0);
        assert!(mixed_holder_ratio(&f, &f, &exps(&[1.5]), &[1.0], &[1.0]).is_err());
        assert!(mixed_holder_ratio(&f, &f, &exps(&[2.0]), &[0.0], &[1.0]).is_err());
    }
}
