//! Pseudo-spectral Navier-Stokes integrator: integrating factor for `Δ`,
//! SSP Runge-Kutta 3 on `-ℙ((u·∇)u)`, 2/3-rule dealiasing.

use num_complex::Complex64;

use super::trajectory::{field_from_spectral, spectral_components, Trajectory};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::TensorGrid;
use crate::spectral::{forward_raw, inverse_raw, leray_in_place, Modes};

type Spec = Vec<Vec<Complex64>>;

struct Stepper<'a> {
    grid: &'a TensorGrid,
    modes: Modes,
    keep: Vec<bool>,
    cfl_factor: f64,
}

impl Stepper<'_> {
    fn dealias(&self, c: &mut Spec) {
        for comp in c.iter_mut() {
            comp.iter_mut()
                .zip(&self.keep)
                .filter(|(_, &k)| !k)
                .for_each(|(v, _)| *v = Complex64::default());
        }
    }

    /// `-ℙ((u·∇)u)` of dealiased `u`, dealiased; also returns `max |u|`.
    fn rhs(&self, u: &Spec) -> (Spec, f64) {
        let n = self.grid.n();
        let mut uh = u.clone();
        self.dealias(&mut uh);
        let phys: Vec<Vec<f64>> = uh.iter().map(|c| inverse_raw(self.grid, c.clone())).collect();
        let umax = phys.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut grads = Vec::with_capacity(n * n);
        for c in &uh {
            for j in 0..n {
                let d: Vec<Complex64> = c
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v * Complex64::new(0.0, self.modes.odd_at(i, j)))
                    .collect();
                grads.push(inverse_raw(self.grid, d));
            }
        }
        let mut out: Spec = (0..n)
            .map(|i| {
                let prod: Vec<f64> = (0..self.grid.len())
                    .map(|x| -(0..n).map(|j| phys[j][x] * grads[i * n + j][x]).sum::<f64>())
                    .collect();
                forward_raw(self.grid, &prod)
            })
            .collect();
        self.dealias(&mut out);
        leray_in_place(&self.modes, &mut out);
        (out, umax)
    }

    fn propagate(&self, u: &Spec, tau: f64) -> Spec {
        u.iter()
            .map(|c| {
                c.iter()
                    .zip(&self.modes.xi2)
                    .map(|(v, k2)| v * (-tau * k2).exp())
                    .collect()
            })
            .collect()
    }

    fn check_cfl(&self, dt: f64, umax: f64) -> Result<()> {
        let limit = 1.0 / (umax * self.cfl_factor).max(f64::MIN_POSITIVE);
        if dt > limit {
            return Err(Error::Cfl { dt, limit });
        }
        Ok(())
    }

    /// One integrating-factor SSP-RK3 step.
    fn step(&self, u: &Spec, dt: f64) -> Result<Spec> {
        let axpy = |a: &Spec, b: &Spec, s: f64| -> Spec {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.iter().zip(y).map(|(x, y)| x + y * s).collect())
                .collect()
        };
        let lin = |a: &Spec, wa: f64, b: &Spec, wb: f64| -> Spec {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.iter().zip(y).map(|(x, y)| x * wa + y * wb).collect())
                .collect()
        };
        let (n0, umax) = self.rhs(u);
        self.check_cfl(dt, umax)?;
        let u1 = self.propagate(&axpy(u, &n0, dt), dt);
        let (n1, _) = self.rhs(&u1);
        let u2 = lin(
            &self.propagate(u, 0.5 * dt),
            0.75,
            &self.propagate(&axpy(&u1, &n1, dt), -0.5 * dt),
            0.25,
        );
        let (n2, _) = self.rhs(&u2);
        Ok(lin(
            &self.propagate(u, dt),
            1.0 / 3.0,
            &self.propagate(&axpy(&u2, &n2, dt), 0.5 * dt),
            2.0 / 3.0,
        ))
    }
}

/// States at `nodes` from `a0`, with steps no longer than `nodes.last() / steps`.
pub fn timestep_oracle(a0: &VectorField, nodes: &[f64], steps: usize) -> Result<Trajectory> {
    let grid = a0.grid();
    if !grid.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    if nodes.is_empty() || steps == 0 {
        return Err(Error::EmptyTrajectory);
    }
    let n = grid.n();
    let modes = Modes::new(grid);
    let mut keep = vec![true; grid.len()];
    let mut idx = vec![0usize; n];
    for (mode, k) in keep.iter_mut().enumerate() {
        grid.multi_index(mode, &mut idx);
        *k = (0..n).all(|a| {
            let m = grid.count(a);
            let kappa = if idx[a] < m / 2 { idx[a] } else { m - idx[a] };
            3 * kappa < m
        });
    }
    let cfl_factor: f64 = (0..n).map(|k| 1.0 / grid.spacing(k)).sum();
    let stepper = Stepper {
        grid,
        modes,
        keep,
        cfl_factor,
    };
    let dt_max = nodes[nodes.len() - 1] / steps as f64;
    let mut u = spectral_components(a0);
    let mut t = 0.0;
    let mut states = Vec::with_capacity(nodes.len());
    for &target in nodes {
        let span = target - t;
        if !(span > 0.0) {
            return Err(Error::InvalidParameter("oracle nodes must increase from 0".into()));
        }
        let count = (span / dt_max).ceil().max(1.0) as usize;
        let dt = span / count as f64;
        for _ in 0..count {
            u = stepper.step(&u, dt)?;
        }
        t = target;
        states.push(field_from_spectral(grid, &u)?);
    }
    Trajectory::new(nodes.to_vec(), a0.clone(), states)
}
