//! One-dimensional profiles for decay experiments.
//!
//! A datum in `L_q` saturates the `t^{-σ/2}` rate only if its `L_p` mass after
//! time `t` sits at scale `√t`. Per axis this holds for `δ`-like bumps
//! (`q = 1`), for the heat-smoothed power law `|s|^{-1/q}` cut off far
//! outside `√t`, and for a wide plateau when `q = p`.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::exponents::{Exponent, MixedExponents};
use crate::grid::TensorGrid;
use crate::heat::kernel::gaussian;
use crate::heat::SeparableField;

/// Kummer `M(a; b; -z)` for `z >= 0`, `0 <= a < b`.
fn kummer_negative(a: f64, b: f64, z: f64) -> f64 {
    if z < 40.0 {
        // M(a; b; -z) = e^{-z} M(b - a; b; z); every term is positive.
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 0.0;
        loop {
            term *= (b - a + k) / (b + k) * z / (k + 1.0);
            sum += term;
            k += 1.0;
            if term < 1e-17 * sum && k > z {
                break;
            }
        }
        (-z).exp() * sum
    } else {
        // Large-argument expansion; the e^{-z} branch is below 1e-17.
        let mut term = 1.0;
        let mut sum = 1.0;
        for s in 0..12 {
            let s = s as f64;
            term *= (a + s) * (a - b + 1.0 + s) / ((s + 1.0) * z);
            sum += term;
        }
        gamma(b) / gamma(b - a) * z.powf(-a) * sum
    }
}

/// `e^{aΔ}|s|^{-γ}` at `x`, for `0 <= γ < 1` and `a > 0`.
pub fn smoothed_power_law(x: f64, gamma_exp: f64, a: f64) -> f64 {
    let z = x * x / (4.0 * a);
    (4.0 * a).powf(-gamma_exp / 2.0) * gamma((1.0 - gamma_exp) / 2.0) / PI.sqrt()
        * kummer_negative(gamma_exp / 2.0, 0.5, z)
}

/// `½(1 - tanh((|x| - cut)/width))`.
pub fn taper(x: f64, cut: f64, width: f64) -> f64 {
    0.5 * (1.0 - ((x.abs() - cut) / width).tanh())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AxisProfile {
    /// `g_a`, unit mass.
    Gaussian { a: f64 },
    /// Smoothed `|s|^{-γ}` times the taper.
    PowerLaw { gamma: f64, a: f64, cut: f64, width: f64 },
    /// The taper alone.
    Plateau { cut: f64, width: f64 },
}

impl AxisProfile {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            AxisProfile::Gaussian { a } => gaussian(a, x),
            AxisProfile::PowerLaw {
                gamma,
                a,
                cut,
                width,
            } => smoothed_power_law(x, gamma, a) * taper(x, cut, width),
            AxisProfile::Plateau { cut, width } => taper(x, cut, width),
        }
    }
}

/// Scale parameters for [`critical_datum`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalScales {
    /// Smoothing time of the Gaussian and power-law cores.
    pub core: f64,
    /// Taper position.
    pub cut: f64,
    pub width: f64,
}

/// The profile that saturates the `L_q → L_p` decay rate on one axis.
pub fn critical_profile(q: Exponent, p: Exponent, scales: CriticalScales) -> AxisProfile {
    let (rq, rp) = (q.reciprocal(), p.reciprocal());
    if rq == 1.0 {
        AxisProfile::Gaussian { a: scales.core }
    } else if rq == rp {
        AxisProfile::Plateau {
            cut: scales.cut,
            width: scales.width,
        }
    } else {
        AxisProfile::PowerLaw {
            gamma: rq,
            a: scales.core,
            cut: scales.cut,
            width: scales.width,
        }
    }
}

/// Tensor product of [`critical_profile`] over axes.
pub fn critical_datum(
    grid: &TensorGrid,
    q: &MixedExponents,
    p: &MixedExponents,
    scales: CriticalScales,
) -> Result<SeparableField> {
    if q.n() != grid.n() || p.n() != grid.n() {
        return Err(Error::DimensionMismatch {
            expected: grid.n(),
            got: q.n().min(p.n()),
        });
    }
    let profiles: Vec<AxisProfile> = (0..grid.n())
        .map(|k| critical_profile(q.get(k), p.get(k), scales))
        .collect();
    SeparableField::from_fns(grid, |k, x| profiles[k].eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_asymptotic_branches_meet() {
        for &a in &[0.05, 0.25, 0.45] {
            let lo = kummer_negative(a, 0.5, 40.0 - 1e-9);
            let hi = kummer_negative(a, 0.5, 40.0);
            assert!(((lo - hi) / hi).abs() < 1e-9, "a = {a}: {lo} vs {hi}");
        }
    }

    #[test]
    fn smoothed_power_law_limits() {
        // γ = 0 is the constant 1; far out the profile is |x|^{-γ}.
        assert!((smoothed_power_law(3.0, 0.0, 2.0) - 1.0).abs() < 1e-14);
        let x = 400.0;
        let v = smoothed_power_law(x, 0.6, 1.0);
        assert!((v * x.powf(0.6) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn smoothed_power_law_matches_direct_quadrature() {
        // ∫ g_a(x - s)|s|^{-γ} ds with the singularity removed by s = sign·u^2.
        let (gam, a, x) = (0.4, 1.5, 1.2);
        let n = 400_000;
        let umax = 12.0f64;
        let du = umax / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let u = (i as f64 + 0.5) * du;
            let s = u * u;
            let w = 2.0 * u * s.powf(-gam);
            acc += w * (gaussian(a, x - s) + gaussian(a, x + s)) * du;
        }
        let v = smoothed_power_law(x, gam, a);
        assert!(((v - acc) / acc).abs() < 1e-6, "{v} vs {acc}");
    }
}
