//! The convective term and the Duhamel form
//! `G(u, v)(t) = -∫_0^t e^{(t-s)Δ} ℙ((u·∇)v)(s) ds`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::SolverConfig;
use super::trajectory::{field_from_spectral, Trajectory};
use crate::error::{Error, Result};
use crate::field::{Gradient, VectorField};
use crate::spectral::{forward_raw, leray_in_place, Modes};

/// `ℙ((u·∇)v)` with `(u·∇)v_i = Σ_j u_j ∂_j v_i`.
pub fn nonlinear_term(u: &VectorField, v_grad: &Gradient) -> Result<VectorField> {
    let grid = u.grid();
    if !grid.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    if v_grad.grid() != grid {
        return Err(Error::GridMismatch);
    }
    let n = grid.n();
    if u.len() != n || v_grad.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.len(),
        });
    }
    let us: Vec<&[f64]> = u.components().iter().map(|c| c.data()).collect();
    let gs: Vec<&[f64]> = v_grad.entries().iter().map(|c| c.data()).collect();
    let modes = Modes::new(grid);
    let mut comps = convective_spectral(grid, &us, &gs);
    leray_in_place(&modes, &mut comps);
    field_from_spectral(grid, &comps)
}

fn convective_spectral(
    grid: &crate::grid::TensorGrid,
    u: &[&[f64]],
    grad: &[&[f64]],
) -> Vec<Vec<Complex64>> {
    let n = u.len();
    (0..n)
        .map(|i| {
            let prod: Vec<f64> = (0..grid.len())
                .map(|x| (0..n).map(|j| u[j][x] * grad[i * n + j][x]).sum())
                .collect();
            forward_raw(grid, &prod)
        })
        .collect()
}

/// Midpoint nodes and weights for `∫_0^t φ(s) ds` split at `t/2`:
/// `s = (t/2) σ^{2/δ}` on the left, `t - s = (t/2) σ²` on the right.
pub(crate) fn split_quadrature(t: f64, delta: f64, k: usize) -> Vec<(f64, f64)> {
    let g = 2.0 / delta;
    let mut out = Vec::with_capacity(2 * k);
    for j in 0..k {
        let sigma = (j as f64 + 0.5) / k as f64;
        let s = 0.5 * t * sigma.powf(g);
        let w = 0.5 * t * g * sigma.powf(g - 1.0) / k as f64;
        out.push((s, w));
    }
    for j in 0..k {
        let sigma = (j as f64 + 0.5) / k as f64;
        let s = t - 0.5 * t * sigma * sigma;
        let w = t * sigma / k as f64;
        out.push((s, w));
    }
    out
}

/// Spectral `ℙ((u·∇)v)(s)` with `u(s)`, `∇v(s)` interpolated in time.
fn integrand(u: &Trajectory, v: &Trajectory, s: f64, delta: f64, modes: &Modes) -> Result<Vec<Vec<Complex64>>> {
    let grid = u.grid();
    let n = grid.n();
    let wu: Vec<(Vec<&[f64]>, f64)> = u
        .weights(s, delta)?
        .into_iter()
        .map(|(src, w)| (u.state_at(src).components().iter().map(|c| c.data()).collect(), w))
        .collect();
    let wv: Vec<(Vec<&[f64]>, f64)> = v
        .weights(s, delta)?
        .into_iter()
        .map(|(src, w)| (v.gradient_at(src).entries().iter().map(|c| c.data()).collect(), w))
        .collect();
    let len = grid.len();
    let blend = |sources: &[(Vec<&[f64]>, f64)], count: usize| -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; len]; count];
        for (data, w) in sources {
            for (o, d) in out.iter_mut().zip(data) {
                o.iter_mut().zip(d.iter()).for_each(|(a, b)| *a += w * b);
            }
        }
        out
    };
    let us = blend(&wu, n);
    let gs = blend(&wv, n * n);
    let mut prods = vec![vec![Complex64::default(); len]; n];
    for (i, p) in prods.iter_mut().enumerate() {
        let mut acc = vec![0.0; len];
        for j in 0..n {
            acc.iter_mut()
                .zip(us[j].iter().zip(&gs[i * n + j]))
                .for_each(|(a, (u, g))| *a += u * g);
        }
        p.iter_mut().zip(acc).for_each(|(c, v)| c.re = v);
    }
    for p in prods.iter_mut() {
        crate::fft::fft_nd(p, grid.counts(), false);
    }
    leray_in_place(modes, &mut prods);
    Ok(prods)
}

pub(crate) fn duhamel_spectral(
    u: &Trajectory,
    v: &Trajectory,
    t: f64,
    delta: f64,
    quad_nodes: usize,
    modes: &Modes,
) -> Result<Vec<Vec<Complex64>>> {
    let grid = u.grid();
    if v.grid() != grid {
        return Err(Error::GridMismatch);
    }
    if u.times() != v.times() {
        return Err(Error::InvalidParameter("trajectories have different nodes".into()));
    }
    let last = *u.times().last().ok_or(Error::EmptyTrajectory)?;
    if !(t > 0.0) || t > last * (1.0 + 1e-12) {
        return Err(Error::TimeOutOfRange { t, lo: 0.0, hi: last });
    }
    let n = grid.n();
    let mut acc = vec![vec![Complex64::default(); grid.len()]; n];
    for (s, w) in split_quadrature(t, delta, quad_nodes) {
        let f = integrand(u, v, s, delta, modes)?;
        let lag = t - s;
        let factor = modes.heat_factors(lag, w);
        for (a, fc) in acc.iter_mut().zip(&f) {
            a.iter_mut()
                .zip(fc)
                .zip(&factor)
                .for_each(|((a, f), c)| *a -= f * c);
        }
    }
    Ok(acc)
}

/// `G(u, v)(t)` by the split graded quadrature.
pub fn duhamel_bilinear(
    u: &Trajectory,
    v: &Trajectory,
    t: f64,
    cfg: &SolverConfig,
) -> Result<VectorField> {
    let grid = u.grid();
    let modes = Modes::new(grid);
    let comps = duhamel_spectral(u, v, t, cfg.delta(), cfg.quad_nodes, &modes)?;
    field_from_spectral(grid, &comps)
}

/// `G(u, v)` at every node of `u`, as a trajectory vanishing at `0⁺`.
pub fn duhamel_trajectory(u: &Trajectory, v: &Trajectory, cfg: &SolverConfig) -> Result<Trajectory> {
    let grid = u.grid().clone();
    let modes = Modes::new(&grid);
    let delta = cfg.delta();
    let spectral = u
        .times()
        .par_iter()
        .map(|&t| duhamel_spectral(u, v, t, delta, cfg.quad_nodes, &modes))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_spectral(
        u.times().to_vec(),
        VectorField::zeros(&grid, grid.n()),
        Gradient::zeros(&grid),
        &spectral,
    )
}
