//! The 1D heat kernel `g_t`, its derivative kernel `h_t`, and their closed-form
//! `L_r` norms.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::exponents::Exponent;

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time {t} must be positive")));
    }
    Ok(())
}

fn check_r(r: Exponent) -> Result<()> {
    if let Exponent::Finite(v) = r {
        if !(v >= 1.0) {
            return Err(Error::InvalidExponent { axis: 0, value: v });
        }
    }
    Ok(())
}

/// `g_t(s) = (4πt)^{-1/2} exp(-s²/4t)`.
pub fn gaussian_kernel_eval(t: f64, s: f64) -> Result<f64> {
    check_time(t)?;
    Ok(gaussian(t, s))
}

pub(crate) fn gaussian(t: f64, s: f64) -> f64 {
    (4.0 * PI * t).powf(-0.5) * (-s * s / (4.0 * t)).exp()
}

/// `h_t(s) = ∂_s g_t(s) = -(4πt)^{-1/2} (s/2t) exp(-s²/4t)`.
pub fn derivative_kernel_eval(t: f64, s: f64) -> Result<f64> {
    check_time(t)?;
    Ok(derivative(t, s))
}

pub(crate) fn derivative(t: f64, s: f64) -> f64 {
    -(4.0 * PI * t).powf(-0.5) * (s / (2.0 * t)) * (-s * s / (4.0 * t)).exp()
}

/// `‖g_t‖_{L_r(ℝ)} = N(r) t^{-(1-1/r)/2}` with
/// `N(r) = (4π)^{-1/2} (4π/r)^{1/(2r)}` and `N(∞) = (4π)^{-1/2}`.
pub fn kernel_1d_norm(t: f64, r: Exponent) -> Result<f64> {
    check_time(t)?;
    check_r(r)?;
    let base = (4.0 * PI).powf(-0.5);
    Ok(match r {
        Exponent::Infinite => base * t.powf(-0.5),
        Exponent::Finite(r) if r == 1.0 => 1.0,
        Exponent::Finite(r) => {
            base * (4.0 * PI / r).powf(1.0 / (2.0 * r)) * t.powf(-(1.0 - 1.0 / r) / 2.0)
        }
    })
}

/// `‖h_t‖_{L_r(ℝ)}` from `∫|s|^r e^{-cs²} ds = Γ((r+1)/2) c^{-(r+1)/2}`.
pub fn derivative_kernel_1d_norm(t: f64, r: Exponent) -> Result<f64> {
    check_time(t)?;
    check_r(r)?;
    let pref = (4.0 * PI * t).powf(-0.5);
    Ok(match r {
        Exponent::Infinite => pref * (2.0 * t).powf(-0.5) * (-0.5f64).exp(),
        Exponent::Finite(r) => {
            let c = r / (4.0 * t);
            let integral = gamma((r + 1.0) / 2.0) * c.powf(-(r + 1.0) / 2.0);
            pref * (2.0 * t).recip() * integral.powf(1.0 / r)
        }
    })
}
