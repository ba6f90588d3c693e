//! Log-log decay fits of `‖e^{tΔ}u_0‖_p` and `‖D_x e^{tΔ}u_0‖_p`, and the
//! small-time continuity sequence.

use serde::{Deserialize, Serialize};

use super::HeatFlow;
use crate::error::{Error, Result};
use crate::exponents::MixedExponents;

/// Times whose boundary-slab mass share exceeds this are left out of fits.
pub const DECAY_TAIL_LIMIT: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    pub fitted_slope: f64,
    pub predicted_slope: f64,
    pub max_residual: f64,
}

/// `-σ/2`, or `-(1+σ)/2` for the gradient, with `σ = Σ(1/q_k - 1/p_k)`.
pub fn predicted_slope(p: &MixedExponents, q: &MixedExponents, with_derivative: bool) -> f64 {
    let sigma: f64 = q
        .reciprocals()
        .iter()
        .zip(p.reciprocals())
        .map(|(rq, rp)| rq - rp)
        .sum();
    if with_derivative {
        -(1.0 + sigma) / 2.0
    } else {
        -sigma / 2.0
    }
}

/// Data lives in `L_q`, the evolved field is measured in `L_p`, `q_k <= p_k`.
pub fn measure_decay<F: HeatFlow + Sync>(
    u0: &F,
    p: &MixedExponents,
    q: &MixedExponents,
    times: &[f64],
    with_derivative: bool,
) -> Result<DecayFit> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: q.n(),
        });
    }
    for k in 0..p.n() {
        if q.get(k).reciprocal() < p.get(k).reciprocal() {
            return Err(Error::ExponentOrdering {
                axis: k,
                q: q.get(k).value(),
                p: p.get(k).value(),
            });
        }
    }
    if times.is_empty() || times[0] <= 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "decay times must be positive and strictly increasing".into(),
        ));
    }

    let mut kept_t = Vec::new();
    let mut kept_norm = Vec::new();
    for &t in times {
        let (value, tail) = if with_derivative {
            let mut value = 0.0f64;
            let mut tail = 0.0f64;
            for j in 0..p.n() {
                let e = u0.heat_evolve_derivative(t, j)?.norm_estimate(p)?;
                value = value.max(e.value);
                tail = tail.max(e.max_tail_fraction());
            }
            (value, tail)
        } else {
            let e = u0.heat_evolve(t)?.norm_estimate(p)?;
            (e.value, e.max_tail_fraction())
        };
        if value == 0.0 {
            return Err(Error::InvalidParameter("decay of the zero field".into()));
        }
        if tail <= DECAY_TAIL_LIMIT {
            kept_t.push(t);
            kept_norm.push(value);
        }
    }
    if kept_t.len() < 2 {
        return Err(Error::DomainEscape);
    }

    let xs: Vec<f64> = kept_t.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = kept_norm.iter().map(|v| v.ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (my + slope * (x - mx))).abs())
        .fold(0.0, f64::max);
    Ok(DecayFit {
        times: kept_t,
        norms: kept_norm,
        fitted_slope: slope,
        predicted_slope: predicted_slope(p, q, with_derivative),
        max_residual,
    })
}

/// `‖e^{tΔ}u_0 - u_0‖_p` for each `t`; every exponent must be finite.
pub fn continuity_at_zero<F: HeatFlow>(
    u0: &F,
    p: &MixedExponents,
    times: &[f64],
) -> Result<Vec<f64>> {
    for (axis, e) in p.as_slice().iter().enumerate() {
        if !e.is_finite() {
            return Err(Error::InvalidExponent {
                axis,
                value: f64::INFINITY,
            });
        }
    }
    times
        .iter()
        .map(|&t| u0.heat_evolve(t)?.distance(u0, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ScalarField;
    use crate::grid::{Boundary, TensorGrid};

    #[test]
    fn ordering_violation_is_reported() {
        let g = TensorGrid::cube(1, 8.0, 64, Boundary::Truncated).unwrap();
        let f = ScalarField::from_fn(&g, |x| (-x[0] * x[0]).exp()).unwrap();
        let p = MixedExponents::from_f64s(&[2.0]).unwrap();
        let q = MixedExponents::from_f64s(&[4.0]).unwrap();
        assert!(matches!(
            measure_decay(&f, &p, &q, &[1.0, 2.0], false),
            Err(Error::ExponentOrdering { axis: 0, .. })
        ));
    }

    #[test]
    fn escaping_mass_is_detected() {
        let g = TensorGrid::cube(1, 4.0, 64, Boundary::Truncated).unwrap();
        let f = ScalarField::from_fn(&g, |x| (-x[0] * x[0]).exp()).unwrap();
        let p = MixedExponents::from_f64s(&[2.0]).unwrap();
        assert_eq!(
            measure_decay(&f, &p, &p, &[20.0, 40.0], false),
            Err(Error::DomainEscape)
        );
    }

    #[test]
    fn continuity_rejects_infinite_exponents() {
        let g = TensorGrid::cube(1, 4.0, 64, Boundary::Truncated).unwrap();
        let f = ScalarField::zeros(&g);
        let p = MixedExponents::from_f64s(&[f64::INFINITY]).unwrap();
        assert!(continuity_at_zero(&f, &p, &[1.0]).is_err());
    }
}
