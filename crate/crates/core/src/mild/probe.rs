//! Direct evaluation of both sides of the mixed-norm bilinear estimates.

use serde::{Deserialize, Serialize};

use super::duhamel::duhamel_spectral;
use super::trajectory::{field_from_spectral, Trajectory};
use crate::error::{Error, Result};
use crate::exponents::MixedExponents;
use crate::norm::{gradient_mixed_norm, ratio, vector_mixed_norm};
use crate::spectral::{gradient_from_spectral, Modes};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BilinearProbeSpec {
    pub p: MixedExponents,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub times: Vec<f64>,
    pub quad_nodes: usize,
    /// Grading and interpolation parameter of the Duhamel quadrature.
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BilinearProbeReport {
    pub times: Vec<f64>,
    /// `‖G(u, v)(t)‖_{p/γ}`.
    pub lhs: Vec<f64>,
    /// `∫_0^t (t-s)^{-(α+β-γ)/2} ‖u(s)‖_{p/α} ‖D_x v(s)‖_{p/β} ds`.
    pub rhs: Vec<f64>,
    pub ratios: Vec<f64>,
    /// Gradient variant; absent when `(1+α+β-γ)/2 >= 1` makes the weight
    /// non-integrable.
    pub gradient_lhs: Option<Vec<f64>>,
    pub gradient_rhs: Option<Vec<f64>>,
    pub gradient_ratios: Option<Vec<f64>>,
    pub max_ratio: f64,
}

impl BilinearProbeSpec {
    /// Scalar `(Σ α_k/p_k, Σ β_k/p_k, Σ γ_k/p_k)`.
    pub fn weighted_sums(&self) -> (f64, f64, f64) {
        let r = self.p.reciprocals();
        let dot = |v: &[f64]| v.iter().zip(&r).map(|(a, b)| a * b).sum::<f64>();
        (dot(&self.alpha), dot(&self.beta), dot(&self.gamma))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.p.n();
        for v in [&self.alpha, &self.beta, &self.gamma] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        for k in 0..n {
            let p = self.p.get(k).value();
            let (a, b, g) = (self.alpha[k], self.beta[k], self.gamma[k]);
            if !(p > 1.0 && p.is_finite()) {
                return Err(Error::InvalidExponent { axis: k, value: p });
            }
            for (name, v) in [("alpha", a), ("beta", b), ("gamma", g)] {
                if !(v > 0.0 && v <= 1.0) {
                    return Err(Error::SplitOutOfRange {
                        axis: k,
                        reason: format!("{name} = {v} not in (0, 1]"),
                    });
                }
            }
            if !(g <= a + b && a + b < p) {
                return Err(Error::SplitOutOfRange {
                    axis: k,
                    reason: format!("need gamma <= alpha + beta < p, got {g}, {}, {p}", a + b),
                });
            }
        }
        if !(self.delta > 0.0 && self.delta < 1.0) || self.quad_nodes == 0 {
            return Err(Error::InvalidParameter("bad quadrature parameters".into()));
        }
        Ok(())
    }
}

/// `∫_0^t (t-s)^{-κ} φ(s) ds`, `κ < 1`: `s = (t/2)σ²` on the left and
/// `t - s = (t/2) σ^{1/(1-κ)}`, which absorbs the weight, on the right.
fn weighted_integral(
    t: f64,
    kappa: f64,
    k: usize,
    phi: &dyn Fn(f64) -> Result<f64>,
) -> Result<f64> {
    let mut acc = 0.0;
    for j in 0..k {
        let sigma = (j as f64 + 0.5) / k as f64;
        let s = 0.5 * t * sigma * sigma;
        acc += t * sigma / k as f64 * (t - s).powf(-kappa) * phi(s)?;
    }
    let right = (0.5 * t).powf(1.0 - kappa) / ((1.0 - kappa) * k as f64);
    for j in 0..k {
        let sigma = (j as f64 + 0.5) / k as f64;
        let s = t - 0.5 * t * sigma.powf(1.0 / (1.0 - kappa));
        acc += right * phi(s)?;
    }
    Ok(acc)
}

pub fn bilinear_probe(
    u: &Trajectory,
    v: &Trajectory,
    spec: &BilinearProbeSpec,
) -> Result<BilinearProbeReport> {
    spec.validate()?;
    let grid = u.grid();
    if grid.n() != spec.p.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.p.n(),
            got: grid.n(),
        });
    }
    let modes = Modes::new(grid);
    let p_alpha = spec.p.divide(&spec.alpha)?;
    let p_beta = spec.p.divide(&spec.beta)?;
    let p_gamma = spec.p.divide(&spec.gamma)?;
    let (a, b, g) = spec.weighted_sums();
    let kappa = (a + b - g) / 2.0;
    let kappa_grad = (1.0 + a + b - g) / 2.0;
    let with_gradient = kappa_grad < 1.0;

    let integrand = |s: f64| -> Result<f64> {
        let (us, _) = u.interpolate(s, spec.delta)?;
        let (_, vg) = v.interpolate(s, spec.delta)?;
        Ok(vector_mixed_norm(&us, &p_alpha)? * gradient_mixed_norm(&vg, &p_beta)?)
    };

    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut glhs = Vec::new();
    let mut grhs = Vec::new();
    for &t in &spec.times {
        let comps = duhamel_spectral(u, v, t, spec.delta, spec.quad_nodes, &modes)?;
        lhs.push(vector_mixed_norm(&field_from_spectral(grid, &comps)?, &p_gamma)?);
        rhs.push(weighted_integral(t, kappa, spec.quad_nodes, &integrand)?);
        if with_gradient {
            let grad = gradient_from_spectral(grid, &modes, &comps)?;
            glhs.push(gradient_mixed_norm(&grad, &p_gamma)?);
            grhs.push(weighted_integral(t, kappa_grad, spec.quad_nodes, &integrand)?);
        }
    }
    let ratios: Vec<f64> = lhs.iter().zip(&rhs).map(|(l, r)| ratio(*l, *r)).collect();
    let gradient_ratios: Option<Vec<f64>> =
        with_gradient.then(|| glhs.iter().zip(&grhs).map(|(l, r)| ratio(*l, *r)).collect());
    let max_ratio = ratios
        .iter()
        .chain(gradient_ratios.iter().flatten())
        .fold(0.0f64, |m, &r| m.max(r));
    Ok(BilinearProbeReport {
        times: spec.times.clone(),
        lhs,
        rhs,
        ratios,
        gradient_lhs: with_gradient.then_some(glhs),
        gradient_rhs: with_gradient.then_some(grhs),
        gradient_ratios,
        max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_integral_matches_beta_function() {
        // ∫_0^t (t-s)^{-κ} s^{1/2} ds = t^{3/2-κ} B(3/2, 1-κ).
        let (t, kappa): (f64, f64) = (1.3, 0.7);
        let est = weighted_integral(t, kappa, 400, &|s| Ok(s.sqrt())).unwrap();
        let exact = t.powf(1.5 - kappa) * statrs::function::beta::beta(1.5, 1.0 - kappa);
        assert!(((est - exact) / exact).abs() < 1e-5, "{est} vs {exact}");
    }

    #[test]
    fn split_hypothesis_is_enforced() {
        let spec = BilinearProbeSpec {
            p: MixedExponents::from_f64s(&[4.0, 4.0]).unwrap(),
            alpha: vec![0.5, 1.0],
            beta: vec![0.2, 1.0],
            gamma: vec![1.0, 1.0],
            times: vec![0.5],
            quad_nodes: 8,
            delta: 0.5,
        };
        assert!(matches!(spec.validate(), Err(Error::SplitOutOfRange { axis: 0, .. })));
    }
}
