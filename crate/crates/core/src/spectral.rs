//! Fourier multipliers on periodic grids: Riesz transforms, the Leray
//! projection, divergence, gradients, pressure recovery and the periodic heat
//! flow.
//!
//! Frequencies are `ξ_k = π κ / L_k` with `κ ∈ {-m_k/2, …, m_k/2 - 1}`.
//! Odd multipliers use `ξ̃`, which equals `ξ` except on the unmatched Nyquist
//! index where it is 0, so real inputs give real outputs. Riesz transforms and
//! the projection are built from `ξ̃`; modes with `ξ̃ = 0` are annihilated by
//! `ℛ_j` and passed through by `ℙ`. The heat multiplier uses the true `|ξ|²`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponents::MixedExponents;
use crate::fft::{fft_nd, to_complex};
use crate::field::{Gradient, ScalarField, VectorField};
use crate::grid::TensorGrid;
use crate::norm::{mixed_norm, ratio, vector_mixed_norm};

/// Per-mode frequency tables in DFT layout.
#[derive(Clone, Debug)]
pub(crate) struct Modes {
    pub n: usize,
    /// `ξ̃`, mode-major: `odd[mode * n + k]`.
    pub odd: Vec<f64>,
    pub odd2: Vec<f64>,
    pub xi2: Vec<f64>,
    /// Per-axis `ξ_k²` in index order.
    axis_xi2: Vec<Vec<f64>>,
    counts: Vec<usize>,
}

impl Modes {
    pub fn new(grid: &TensorGrid) -> Self {
        let n = grid.n();
        let axes: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
            .map(|k| {
                let m = grid.count(k);
                let scale = std::f64::consts::PI / grid.half_width(k);
                let xi: Vec<f64> = (0..m)
                    .map(|i| {
                        let kappa = if i < m / 2 { i as f64 } else { i as f64 - m as f64 };
                        kappa * scale
                    })
                    .collect();
                let mut odd = xi.clone();
                odd[m / 2] = 0.0;
                (xi, odd)
            })
            .collect();
        let len = grid.len();
        let mut odd = vec![0.0; len * n];
        let mut odd2 = vec![0.0; len];
        let mut xi2 = vec![0.0; len];
        let mut idx = vec![0usize; n];
        for mode in 0..len {
            grid.multi_index(mode, &mut idx);
            for k in 0..n {
                let (x, o) = (axes[k].0[idx[k]], axes[k].1[idx[k]]);
                odd[mode * n + k] = o;
                odd2[mode] += o * o;
                xi2[mode] += x * x;
            }
        }
        let axis_xi2 = axes.iter().map(|(xi, _)| xi.iter().map(|x| x * x).collect()).collect();
        Self {
            n,
            odd,
            odd2,
            xi2,
            axis_xi2,
            counts: grid.counts().to_vec(),
        }
    }

    /// `w e^{-τ|ξ|²}` per mode, from per-axis factors.
    pub fn heat_factors(&self, tau: f64, w: f64) -> Vec<f64> {
        let mut out = vec![w];
        for (k, x2) in self.axis_xi2.iter().enumerate() {
            let f: Vec<f64> = x2.iter().map(|v| (-tau * v).exp()).collect();
            let mut next = Vec::with_capacity(out.len() * self.counts[k]);
            for fk in &f {
                next.extend(out.iter().map(|o| o * fk));
            }
            out = next;
        }
        out
    }

    pub fn odd_at(&self, mode: usize, k: usize) -> f64 {
        self.odd[mode * self.n + k]
    }
}

fn require_periodic(grid: &TensorGrid) -> Result<()> {
    if !grid.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    Ok(())
}

pub(crate) fn forward_raw(grid: &TensorGrid, data: &[f64]) -> Vec<Complex64> {
    let mut c = to_complex(data);
    fft_nd(&mut c, grid.counts(), false);
    c
}

pub(crate) fn inverse_raw(grid: &TensorGrid, mut c: Vec<Complex64>) -> Vec<f64> {
    fft_nd(&mut c, grid.counts(), true);
    c.into_iter().map(|v| v.re).collect()
}

/// DFT coefficients of each component of a field on a periodic grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: TensorGrid,
    coefficients: Vec<Vec<Complex64>>,
}

impl SpectralField {
    pub fn from_scalar(f: &ScalarField) -> Result<Self> {
        require_periodic(f.grid())?;
        Ok(Self {
            grid: f.grid().clone(),
            coefficients: vec![forward_raw(f.grid(), f.data())],
        })
    }

    pub fn from_vector(v: &VectorField) -> Result<Self> {
        require_periodic(v.grid())?;
        Ok(Self {
            grid: v.grid().clone(),
            coefficients: v
                .components()
                .iter()
                .map(|c| forward_raw(c.grid(), c.data()))
                .collect(),
        })
    }

    pub fn grid(&self) -> &TensorGrid {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Vec<Complex64>] {
        &self.coefficients
    }

    /// Real parts of the inverse transforms.
    pub fn to_vector(&self) -> Result<VectorField> {
        VectorField::new(
            self.coefficients
                .iter()
                .map(|c| ScalarField::new(self.grid.clone(), inverse_raw(&self.grid, c.clone())))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Largest imaginary part left by the inverse transforms.
    pub fn imaginary_residue(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| {
                let mut c = c.clone();
                fft_nd(&mut c, self.grid.counts(), true);
                c.iter().fold(0.0f64, |m, v| m.max(v.im.abs()))
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|c(κ) - conj c(-κ)|` over modes and components.
    pub fn conjugate_asymmetry(&self) -> f64 {
        let grid = &self.grid;
        let n = grid.n();
        let mut idx = vec![0usize; n];
        let mut neg = vec![0usize; n];
        let mut worst = 0.0f64;
        for c in &self.coefficients {
            for mode in 0..grid.len() {
                grid.multi_index(mode, &mut idx);
                for k in 0..n {
                    let m = grid.count(k);
                    neg[k] = (m - idx[k]) % m;
                }
                worst = worst.max((c[mode] - c[grid.flat_index(&neg)].conj()).norm());
            }
        }
        worst
    }
}

fn scalar_multiplier(
    f: &ScalarField,
    mult: impl Fn(&Modes, usize) -> Complex64,
) -> Result<ScalarField> {
    let grid = f.grid();
    require_periodic(grid)?;
    let modes = Modes::new(grid);
    let mut c = forward_raw(grid, f.data());
    c.iter_mut().enumerate().for_each(|(i, v)| *v *= mult(&modes, i));
    ScalarField::new(grid.clone(), inverse_raw(grid, c))
}

/// `ℛ_j` with multiplier `-i ξ̃_j / |ξ̃|`; the mean is annihilated.
pub fn riesz_transform(f: &ScalarField, j: usize) -> Result<ScalarField> {
    f.grid().check_axis(j)?;
    scalar_multiplier(f, |m, i| {
        if m.odd2[i] == 0.0 {
            Complex64::default()
        } else {
            Complex64::new(0.0, -m.odd_at(i, j) / m.odd2[i].sqrt())
        }
    })
}

/// `∂_j` with multiplier `i ξ̃_j`.
pub fn spectral_derivative(f: &ScalarField, j: usize) -> Result<ScalarField> {
    f.grid().check_axis(j)?;
    scalar_multiplier(f, |m, i| Complex64::new(0.0, m.odd_at(i, j)))
}

/// `e^{tΔ}` (or `∂_j e^{tΔ}`) as the multiplier `e^{-t|ξ|²}` on a periodic grid.
pub fn periodic_heat(
    f: &ScalarField,
    t: f64,
    derivative_axis: Option<usize>,
) -> Result<ScalarField> {
    if let Some(j) = derivative_axis {
        f.grid().check_axis(j)?;
    }
    scalar_multiplier(f, |m, i| {
        let decay = (-t * m.xi2[i]).exp();
        match derivative_axis {
            Some(j) => Complex64::new(0.0, m.odd_at(i, j) * decay),
            None => Complex64::new(decay, 0.0),
        }
    })
}

fn check_velocity(v: &VectorField) -> Result<()> {
    require_periodic(v.grid())?;
    if v.len() != v.grid().n() {
        return Err(Error::DimensionMismatch {
            expected: v.grid().n(),
            got: v.len(),
        });
    }
    Ok(())
}

/// Applies `δ_jk - ξ̃_j ξ̃_k / |ξ̃|²` in place to spectral components.
pub(crate) fn leray_in_place(modes: &Modes, comps: &mut [Vec<Complex64>]) {
    let n = modes.n;
    let len = comps[0].len();
    let mut tmp = vec![Complex64::default(); n];
    for mode in 0..len {
        let k2 = modes.odd2[mode];
        if k2 == 0.0 {
            continue;
        }
        let xi = &modes.odd[mode * n..(mode + 1) * n];
        let dot: Complex64 = (0..n).map(|k| comps[k][mode] * xi[k]).sum();
        for k in 0..n {
            tmp[k] = comps[k][mode] - dot * (xi[k] / k2);
        }
        for k in 0..n {
            comps[k][mode] = tmp[k];
        }
    }
}

pub fn leray_project(v: &VectorField) -> Result<VectorField> {
    check_velocity(v)?;
    let grid = v.grid();
    let modes = Modes::new(grid);
    let mut comps: Vec<Vec<Complex64>> = v
        .components()
        .iter()
        .map(|c| forward_raw(grid, c.data()))
        .collect();
    leray_in_place(&modes, &mut comps);
    VectorField::new(
        comps
            .into_iter()
            .map(|c| ScalarField::new(grid.clone(), inverse_raw(grid, c)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// `Σ_j i ξ̃_j v̂_j`, inverse transformed.
pub fn spectral_divergence(v: &VectorField) -> Result<ScalarField> {
    check_velocity(v)?;
    let grid = v.grid();
    let modes = Modes::new(grid);
    let mut acc = vec![Complex64::default(); grid.len()];
    for (j, comp) in v.components().iter().enumerate() {
        let c = forward_raw(grid, comp.data());
        acc.iter_mut()
            .zip(c)
            .enumerate()
            .for_each(|(i, (a, b))| *a += b * Complex64::new(0.0, modes.odd_at(i, j)));
    }
    ScalarField::new(grid.clone(), inverse_raw(grid, acc))
}

pub(crate) fn gradient_from_spectral(
    grid: &TensorGrid,
    modes: &Modes,
    comps: &[Vec<Complex64>],
) -> Result<Gradient> {
    let n = grid.n();
    let mut entries = Vec::with_capacity(n * n);
    for c in comps {
        for j in 0..n {
            let d: Vec<Complex64> = c
                .iter()
                .enumerate()
                .map(|(i, v)| v * Complex64::new(0.0, modes.odd_at(i, j)))
                .collect();
            entries.push(ScalarField::new(grid.clone(), inverse_raw(grid, d))?);
        }
    }
    Gradient::new(n, entries)
}

/// Spectral `∂_j u_i` for every pair.
pub fn spectral_gradient(v: &VectorField) -> Result<Gradient> {
    check_velocity(v)?;
    let grid = v.grid();
    let modes = Modes::new(grid);
    let comps: Vec<Vec<Complex64>> = v
        .components()
        .iter()
        .map(|c| forward_raw(grid, c.data()))
        .collect();
    gradient_from_spectral(grid, &modes, &comps)
}

/// `P = Σ_ij ℛ_i ℛ_j (u_i u_j)` with zero mean.
pub fn pressure_from_velocity(u: &VectorField) -> Result<ScalarField> {
    check_velocity(u)?;
    let grid = u.grid();
    let n = grid.n();
    let modes = Modes::new(grid);
    let mut acc = vec![Complex64::default(); grid.len()];
    for i in 0..n {
        for j in i..n {
            let prod = u.component(i).mul(u.component(j))?;
            let c = forward_raw(grid, prod.data());
            let weight = if i == j { 1.0 } else { 2.0 };
            for (mode, (a, b)) in acc.iter_mut().zip(c).enumerate() {
                let k2 = modes.odd2[mode];
                if k2 != 0.0 {
                    *a -= b * (weight * modes.odd_at(mode, i) * modes.odd_at(mode, j) / k2);
                }
            }
        }
    }
    acc[0] = Complex64::default();
    ScalarField::new(grid.clone(), inverse_raw(grid, acc))
}

fn check_open_exponents(p: &MixedExponents) -> Result<()> {
    for (axis, e) in p.as_slice().iter().enumerate() {
        let v = e.value();
        if !(v > 1.0 && v.is_finite()) {
            return Err(Error::InvalidExponent { axis, value: v });
        }
    }
    Ok(())
}

/// `max_j max_f ‖ℛ_j f‖_p / ‖f‖_p` over nonzero `f`; exponents in `(1, ∞)`.
pub fn riesz_boundedness_probe(test_set: &[ScalarField], p: &MixedExponents) -> Result<f64> {
    check_open_exponents(p)?;
    let mut worst = 0.0f64;
    for f in test_set {
        let base = mixed_norm(f, p)?;
        if base == 0.0 {
            continue;
        }
        for j in 0..f.grid().n() {
            worst = worst.max(ratio(mixed_norm(&riesz_transform(f, j)?, p)?, base));
        }
    }
    Ok(worst)
}

/// `max_v ‖ℙ v‖_p / ‖v‖_p` over nonzero `v`, component-max aggregation.
pub fn leray_boundedness_probe(test_set: &[VectorField], p: &MixedExponents) -> Result<f64> {
    check_open_exponents(p)?;
    let mut worst = 0.0f64;
    for v in test_set {
        let base = vector_mixed_norm(v, p)?;
        if base == 0.0 {
            continue;
        }
        worst = worst.max(ratio(vector_mixed_norm(&leray_project(v)?, p)?, base));
    }
    Ok(worst)
}
