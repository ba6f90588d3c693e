//! The heat semigroup `e^{tΔ}`: separable evolution on truncated grids,
//! spectral evolution on periodic grids, kernel norms, decay fits and the
//! small-time continuity check.

mod decay;
mod evolve;
mod kernel;
pub mod profiles;
mod separable;

pub use decay::{continuity_at_zero, measure_decay, predicted_slope, DecayFit, DECAY_TAIL_LIMIT};
pub use kernel::{
    derivative_kernel_1d_norm, derivative_kernel_eval, gaussian_kernel_eval, kernel_1d_norm,
};
pub use separable::SeparableField;

use crate::error::{Error, Result};
use crate::exponents::MixedExponents;
use crate::field::{ScalarField, VectorField};
use crate::norm::{mixed_norm_estimate, NormEstimate};
use crate::spectral::periodic_heat;

/// Fields the heat flow acts on.
pub trait HeatFlow: Sized {
    /// `e^{tΔ} u`; `t = 0` is the identity.
    fn heat_evolve(&self, t: f64) -> Result<Self>;
    /// `∂_j e^{tΔ} u` for `t > 0`.
    fn heat_evolve_derivative(&self, t: f64, axis: usize) -> Result<Self>;
    fn norm_estimate(&self, p: &MixedExponents) -> Result<NormEstimate>;
    /// `‖self - other‖_p`.
    fn distance(&self, other: &Self, p: &MixedExponents) -> Result<f64>;
}

pub fn heat_evolve<F: HeatFlow>(u0: &F, t: f64) -> Result<F> {
    u0.heat_evolve(t)
}

pub fn heat_evolve_derivative<F: HeatFlow>(u0: &F, t: f64, axis: usize) -> Result<F> {
    u0.heat_evolve_derivative(t, axis)
}

fn check_time(t: f64, allow_zero: bool) -> Result<()> {
    let ok = if allow_zero { t >= 0.0 } else { t > 0.0 };
    if !(ok && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("invalid time {t}")));
    }
    Ok(())
}

impl HeatFlow for ScalarField {
    fn heat_evolve(&self, t: f64) -> Result<Self> {
        check_time(t, true)?;
        if t == 0.0 {
            return Ok(self.clone());
        }
        if self.grid().is_periodic() {
            return periodic_heat(self, t, None);
        }
        let out = evolve::evolve_truncated(self.grid(), self.data(), t, None)?;
        ScalarField::new(self.grid().clone(), out)
    }

    fn heat_evolve_derivative(&self, t: f64, axis: usize) -> Result<Self> {
        check_time(t, false)?;
        self.grid().check_axis(axis)?;
        if self.grid().is_periodic() {
            return periodic_heat(self, t, Some(axis));
        }
        let out = evolve::evolve_truncated(self.grid(), self.data(), t, Some(axis))?;
        ScalarField::new(self.grid().clone(), out)
    }

    fn norm_estimate(&self, p: &MixedExponents) -> Result<NormEstimate> {
        mixed_norm_estimate(self, p)
    }

    fn distance(&self, other: &Self, p: &MixedExponents) -> Result<f64> {
        crate::norm::mixed_norm(&self.sub(other)?, p)
    }
}

impl HeatFlow for VectorField {
    fn heat_evolve(&self, t: f64) -> Result<Self> {
        VectorField::new(
            self.components()
                .iter()
                .map(|c| c.heat_evolve(t))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    fn heat_evolve_derivative(&self, t: f64, axis: usize) -> Result<Self> {
        VectorField::new(
            self.components()
                .iter()
                .map(|c| c.heat_evolve_derivative(t, axis))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Component maximum; tail fractions are the per-axis component maximum.
    fn norm_estimate(&self, p: &MixedExponents) -> Result<NormEstimate> {
        let mut value = 0.0f64;
        let mut tail = vec![0.0f64; self.grid().n()];
        for c in self.components() {
            let e = mixed_norm_estimate(c, p)?;
            value = value.max(e.value);
            tail.iter_mut()
                .zip(&e.tail_fraction)
                .for_each(|(a, &b)| *a = a.max(b));
        }
        Ok(NormEstimate {
            value,
            tail_fraction: tail,
        })
    }

    fn distance(&self, other: &Self, p: &MixedExponents) -> Result<f64> {
        crate::norm::vector_mixed_norm(&self.sub(other)?, p)
    }
}
