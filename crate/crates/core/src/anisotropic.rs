//! Fields decaying at different rates along different axes, and norm growth
//! curves as the truncated box widens.
//!
//! The profile is `(x₁² + c²)^{-a/2} (|x'|² + c²)^{-b/2}` with `x' = (x₂, …, xₙ)`.
//! It factors as `g(x₁) h(x')`, and since axis 1 is innermost every mixed norm
//! factors as `‖g‖_{p₁} ‖h‖_{(p₂, …, pₙ)}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{Exponent, MixedExponents};
use crate::field::ScalarField;
use crate::grid::{Boundary, TensorGrid};
use crate::norm::mixed_norm;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnisotropicProfile {
    /// Decay rate along axis 1.
    pub a: f64,
    /// Decay rate in `|x'|`.
    pub b: f64,
    /// Smoothing length at the origin.
    pub core: f64,
}

impl AnisotropicProfile {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let r2: f64 = x[1..].iter().map(|v| v * v).sum();
        self.axis_factor(x[0]) * (r2 + self.core * self.core).powf(-self.b / 2.0)
    }

    fn axis_factor(&self, x1: f64) -> f64 {
        (x1 * x1 + self.core * self.core).powf(-self.a / 2.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub half_width: f64,
    pub mixed: f64,
    pub plain: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthCurve {
    pub points: Vec<GrowthPoint>,
    /// `d ln N / d ln L` over the last two half-widths.
    pub mixed_last_slope: f64,
    pub plain_last_slope: f64,
}

/// Mixed and plain `L_p` norms of the profile on `[-L, L]ⁿ` at spacing `h`
/// for each `L`; every `L / h` must be an integer of at least 2.
pub fn growth_curve(
    profile: &AnisotropicProfile,
    mixed: &MixedExponents,
    plain: f64,
    half_widths: &[f64],
    spacing: f64,
) -> Result<GrowthCurve> {
    let n = mixed.n();
    if n < 2 {
        return Err(Error::InvalidParameter("the profile needs at least two axes".into()));
    }
    if !(plain >= 1.0) {
        return Err(Error::InvalidExponent {
            axis: 0,
            value: plain,
        });
    }
    if half_widths.len() < 2 || half_widths.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "need at least two increasing half-widths".into(),
        ));
    }
    let plain_all = MixedExponents::uniform(n, Exponent::Finite(plain))?;
    let mut points = Vec::with_capacity(half_widths.len());
    for &l in half_widths {
        let cells = l / spacing;
        if (cells - cells.round()).abs() > 1e-9 || cells.round() < 2.0 {
            return Err(Error::InvalidParameter(format!(
                "half-width {l} is not a multiple of the spacing {spacing}"
            )));
        }
        let m = 2 * cells.round() as usize;
        let line = TensorGrid::new(vec![l], vec![m], Boundary::Truncated)?;
        let rest = TensorGrid::cube(n - 1, l, m, Boundary::Truncated)?;
        let g = ScalarField::from_fn(&line, |x| profile.axis_factor(x[0]))?;
        let h = ScalarField::from_fn(&rest, |x| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            (r2 + profile.core * profile.core).powf(-profile.b / 2.0)
        })?;
        let tail = MixedExponents::new(mixed.as_slice()[1..].to_vec())?;
        let first = MixedExponents::new(vec![mixed.get(0)])?;
        let plain_tail = MixedExponents::new(plain_all.as_slice()[1..].to_vec())?;
        let plain_first = MixedExponents::new(vec![plain_all.get(0)])?;
        points.push(GrowthPoint {
            half_width: l,
            mixed: mixed_norm(&g, &first)? * mixed_norm(&h, &tail)?,
            plain: mixed_norm(&g, &plain_first)? * mixed_norm(&h, &plain_tail)?,
        });
    }
    let [.., a, b] = points.as_slice() else {
        unreachable!("at least two points")
    };
    let dl = (b.half_width / a.half_width).ln();
    Ok(GrowthCurve {
        mixed_last_slope: (b.mixed / a.mixed).ln() / dl,
        plain_last_slope: (b.plain / a.plain).ln() / dl,
        points,
    })
}
