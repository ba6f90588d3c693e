use num_complex::Complex64;

use super::config::SolverConfig;
use crate::error::{Error, Result};
use crate::field::{Gradient, ScalarField, VectorField};
use crate::grid::TensorGrid;
use crate::norm::{gradient_mixed_norm, vector_mixed_norm};
use crate::spectral::{forward_raw, gradient_from_spectral, inverse_raw, spectral_divergence, Modes};

/// Velocity states and spectral gradients at graded times, plus the value at
/// `t = 0⁺` used to interpolate below the first node.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    initial: VectorField,
    initial_gradient: Gradient,
    states: Vec<VectorField>,
    gradients: Vec<Gradient>,
}

/// Interpolation source: the `t = 0⁺` value or a node index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Source {
    Initial,
    Node(usize),
}

fn check_velocity(v: &VectorField) -> Result<()> {
    if !v.grid().is_periodic() {
        return Err(Error::NotPeriodic);
    }
    if v.len() != v.grid().n() {
        return Err(Error::DimensionMismatch {
            expected: v.grid().n(),
            got: v.len(),
        });
    }
    Ok(())
}

pub(crate) fn spectral_components(v: &VectorField) -> Vec<Vec<Complex64>> {
    v.components()
        .iter()
        .map(|c| forward_raw(c.grid(), c.data()))
        .collect()
}

pub(crate) fn field_from_spectral(grid: &TensorGrid, comps: &[Vec<Complex64>]) -> Result<VectorField> {
    VectorField::new(
        comps
            .iter()
            .map(|c| ScalarField::new(grid.clone(), inverse_raw(grid, c.clone())))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    if !(times[0] > 0.0) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "trajectory times must be positive and strictly increasing".into(),
        ));
    }
    Ok(())
}

impl Trajectory {
    /// Gradients are computed spectrally from the states.
    pub fn new(times: Vec<f64>, initial: VectorField, states: Vec<VectorField>) -> Result<Self> {
        check_times(&times)?;
        if states.len() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                got: states.len(),
            });
        }
        check_velocity(&initial)?;
        let grid = initial.grid().clone();
        let modes = Modes::new(&grid);
        let grad = |v: &VectorField| -> Result<Gradient> {
            if v.grid() != &grid {
                return Err(Error::GridMismatch);
            }
            check_velocity(v)?;
            gradient_from_spectral(&grid, &modes, &spectral_components(v))
        };
        let initial_gradient = grad(&initial)?;
        let gradients = states.iter().map(grad).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            times,
            initial,
            initial_gradient,
            states,
            gradients,
        })
    }

    /// Reassembles stored states and gradients without recomputing them.
    pub(crate) fn from_parts(
        times: Vec<f64>,
        initial: (VectorField, Gradient),
        nodes: Vec<(VectorField, Gradient)>,
    ) -> Result<Self> {
        check_times(&times)?;
        if nodes.len() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                got: nodes.len(),
            });
        }
        let grid = initial.0.grid().clone();
        for (v, g) in std::iter::once(&initial).chain(&nodes) {
            check_velocity(v)?;
            if v.grid() != &grid || g.grid() != &grid || g.n() != grid.n() {
                return Err(Error::GridMismatch);
            }
        }
        let (states, gradients) = nodes.into_iter().unzip();
        Ok(Self {
            times,
            initial: initial.0,
            initial_gradient: initial.1,
            states,
            gradients,
        })
    }

    /// Builds from spectral states; used where the coefficients already exist.
    pub(crate) fn from_spectral(
        times: Vec<f64>,
        initial: VectorField,
        initial_gradient: Gradient,
        spectral_states: &[Vec<Vec<Complex64>>],
    ) -> Result<Self> {
        check_times(&times)?;
        let grid = initial.grid().clone();
        let modes = Modes::new(&grid);
        let mut states = Vec::with_capacity(times.len());
        let mut gradients = Vec::with_capacity(times.len());
        for comps in spectral_states {
            states.push(field_from_spectral(&grid, comps)?);
            gradients.push(gradient_from_spectral(&grid, &modes, comps)?);
        }
        Ok(Self {
            times,
            initial,
            initial_gradient,
            states,
            gradients,
        })
    }

    /// `e^{tΔ} a_0` at each time, evaluated exactly by the spectral multiplier.
    pub fn heat_flow(a0: &VectorField, times: Vec<f64>) -> Result<Self> {
        check_velocity(a0)?;
        check_times(&times)?;
        let grid = a0.grid().clone();
        let modes = Modes::new(&grid);
        let base = spectral_components(a0);
        let spectral: Vec<Vec<Vec<Complex64>>> = times
            .iter()
            .map(|&t| {
                base.iter()
                    .map(|c| {
                        c.iter()
                            .zip(&modes.xi2)
                            .map(|(v, k2)| v * (-t * k2).exp())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let initial_gradient = gradient_from_spectral(&grid, &modes, &base)?;
        Self::from_spectral(times, a0.clone(), initial_gradient, &spectral)
    }

    pub fn zeros(grid: &TensorGrid, times: Vec<f64>) -> Result<Self> {
        let z = VectorField::zeros(grid, grid.n());
        let states = vec![z.clone(); times.len()];
        Self::new(times, z, states)
    }

    pub fn grid(&self) -> &TensorGrid {
        self.initial.grid()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn initial(&self) -> &VectorField {
        &self.initial
    }

    pub fn initial_gradient(&self) -> &Gradient {
        &self.initial_gradient
    }

    pub fn states(&self) -> &[VectorField] {
        &self.states
    }

    pub fn gradients(&self) -> &[Gradient] {
        &self.gradients
    }

    fn combine(
        &self,
        other: &Self,
        f: impl Fn(f64, f64) -> f64 + Copy,
    ) -> Result<Self> {
        if self.times != other.times {
            return Err(Error::InvalidParameter("trajectories have different nodes".into()));
        }
        let zip_grad = |a: &Gradient, b: &Gradient| -> Result<Gradient> {
            Gradient::new(
                a.n(),
                a.entries()
                    .iter()
                    .zip(b.entries())
                    .map(|(x, y)| x.zip_with(y, f))
                    .collect::<Result<Vec<_>>>()?,
            )
        };
        Ok(Self {
            times: self.times.clone(),
            initial: self.initial.zip_with(&other.initial, f)?,
            initial_gradient: zip_grad(&self.initial_gradient, &other.initial_gradient)?,
            states: self
                .states
                .iter()
                .zip(&other.states)
                .map(|(a, b)| a.zip_with(b, f))
                .collect::<Result<Vec<_>>>()?,
            gradients: self
                .gradients
                .iter()
                .zip(&other.gradients)
                .map(|(a, b)| zip_grad(a, b))
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            times: self.times.clone(),
            initial: self.initial.scale(c),
            initial_gradient: self.initial_gradient.scale(c),
            states: self.states.iter().map(|s| s.scale(c)).collect(),
            gradients: self.gradients.iter().map(|g| g.scale(c)).collect(),
        }
    }

    /// Largest spectral divergence over all nodes.
    pub fn max_divergence(&self) -> Result<f64> {
        self.states
            .iter()
            .try_fold(0.0f64, |m, s| Ok(m.max(spectral_divergence(s)?.max_abs())))
    }

    /// Weights reconstructing `u(s)` from stored values.
    ///
    /// On `[t_1, t_M]` this is cubic Lagrange interpolation in `ln t` of
    /// `t^{(1-δ)/2} u`; on `(0, t_1)` it is linear in `t` between the `0⁺`
    /// value and the first node.
    pub(crate) fn weights(&self, s: f64, delta: f64) -> Result<Vec<(Source, f64)>> {
        let t = &self.times;
        let last = *t.last().expect("nonempty");
        if !(s > 0.0) || s > last * (1.0 + 1e-12) {
            return Err(Error::TimeOutOfRange { t: s, lo: 0.0, hi: last });
        }
        if s < t[0] {
            let w = s / t[0];
            return Ok(vec![(Source::Initial, 1.0 - w), (Source::Node(0), w)]);
        }
        let m = t.len();
        if m == 1 {
            return Ok(vec![(Source::Node(0), 1.0)]);
        }
        let upper = t.partition_point(|&x| x < s).clamp(1, m - 1);
        let width = m.min(4);
        let start = (upper as isize - 2).clamp(0, (m - width) as isize) as usize;
        let idx: Vec<usize> = (start..start + width).collect();
        let ls = s.ln();
        let expo = (1.0 - delta) / 2.0;
        Ok(idx
            .iter()
            .map(|&i| {
                let li = t[i].ln();
                let lagrange: f64 = idx
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| (ls - t[j].ln()) / (li - t[j].ln()))
                    .product();
                (Source::Node(i), lagrange * (t[i] / s).powf(expo))
            })
            .collect())
    }

    pub(crate) fn state_at(&self, src: Source) -> &VectorField {
        match src {
            Source::Initial => &self.initial,
            Source::Node(i) => &self.states[i],
        }
    }

    pub(crate) fn gradient_at(&self, src: Source) -> &Gradient {
        match src {
            Source::Initial => &self.initial_gradient,
            Source::Node(i) => &self.gradients[i],
        }
    }

    /// Interpolated state and gradient at `s ∈ (0, t_M]`.
    pub fn interpolate(&self, s: f64, delta: f64) -> Result<(VectorField, Gradient)> {
        let w = self.weights(s, delta)?;
        let grid = self.grid();
        let n = grid.n();
        let blend = |sources: Vec<(Vec<&[f64]>, f64)>, count: usize| -> Vec<Vec<f64>> {
            let mut out = vec![vec![0.0; grid.len()]; count];
            for (data, wt) in sources {
                for (o, d) in out.iter_mut().zip(data) {
                    o.iter_mut().zip(d).for_each(|(a, b)| *a += wt * b);
                }
            }
            out
        };
        let states = blend(
            w.iter()
                .map(|&(src, wt)| {
                    let d = self.state_at(src).components().iter().map(|c| c.data()).collect();
                    (d, wt)
                })
                .collect(),
            n,
        );
        let grads = blend(
            w.iter()
                .map(|&(src, wt)| {
                    let d = self.gradient_at(src).entries().iter().map(|c| c.data()).collect();
                    (d, wt)
                })
                .collect(),
            n * n,
        );
        let state = VectorField::new(
            states
                .into_iter()
                .map(|d| ScalarField::new(grid.clone(), d))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let gradient = Gradient::new(
            n,
            grads
                .into_iter()
                .map(|d| ScalarField::new(grid.clone(), d))
                .collect::<Result<Vec<_>>>()?,
        )?;
        Ok((state, gradient))
    }
}

/// `max_i [t_i^{(1-δ)/2} ‖u(t_i)‖_q + t_i^{1/2} ‖D_x u(t_i)‖_p]`.
pub fn xspace_norm(traj: &Trajectory, cfg: &SolverConfig) -> Result<f64> {
    let expo = (1.0 - cfg.delta()) / 2.0;
    traj.times
        .iter()
        .zip(traj.states.iter().zip(&traj.gradients))
        .try_fold(0.0f64, |m, (&t, (u, g))| {
            let v = t.powf(expo) * vector_mixed_norm(u, &cfg.q)?
                + t.sqrt() * gradient_mixed_norm(g, &cfg.p)?;
            Ok(m.max(v))
        })
}

/// `max_i [‖u(t_i)‖_p + t_i^{1/2} ‖D_x u(t_i)‖_p]`.
pub fn yspace_norm(traj: &Trajectory, cfg: &SolverConfig) -> Result<f64> {
    traj.times
        .iter()
        .zip(traj.states.iter().zip(&traj.gradients))
        .try_fold(0.0f64, |m, (&t, (u, g))| {
            let v = vector_mixed_norm(u, &cfg.p)? + t.sqrt() * gradient_mixed_norm(g, &cfg.p)?;
            Ok(m.max(v))
        })
}
