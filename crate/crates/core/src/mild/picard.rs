//! Picard iteration `u^{m+1} = u_0 + G(u^m, u^m)` with a measured contraction
//! certificate, and the horizon-halving local branch.

use serde::{Deserialize, Serialize};

use super::config::SolverConfig;
use super::duhamel::duhamel_trajectory;
use super::trajectory::{xspace_norm, yspace_norm, Trajectory};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::flows::random_divergence_free;
use crate::norm::{ratio, vector_mixed_norm};
use crate::rng::SplitMix64;
use crate::spectral::{leray_project, spectral_divergence};

/// Measured constants of the abstract fixed-point condition `4 N₂ ‖u₀‖_X < 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionCertificate {
    pub u0_x_norm: f64,
    /// `max ‖G(u_i, u_j)‖_X / (‖u_i‖_X ‖u_j‖_X)` over the probe suite.
    pub bilinear_constant: f64,
    /// `‖u₀‖_X / ‖a₀‖_p`.
    pub linear_constant: f64,
    pub product: f64,
    pub satisfied: bool,
    /// `‖u^{m+1} - u^m‖_X / ‖u^m - u^{m-1}‖_X`.
    pub iteration_ratios: Vec<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct PicardOptions {
    /// Skips the probe suite when set.
    pub bilinear_constant: Option<f64>,
    /// Replaces `u⁰ = u₀` as the first iterate.
    pub initial_guess: Option<Trajectory>,
    pub probe_seed: u64,
}

#[derive(Clone, Debug)]
pub struct PicardOutcome {
    pub trajectory: Trajectory,
    pub linear: Trajectory,
    pub certificate: ContractionCertificate,
    pub iterations: usize,
    pub converged: bool,
    pub diverged: bool,
    /// `‖u^{m+1} - u^m‖_X` per iteration.
    pub differences: Vec<f64>,
    /// `‖u - u₀ - G(u, u)‖_X`, evaluated after convergence.
    pub residual: Option<f64>,
    pub solution_x_norm: f64,
    /// Set when the data had to be projected onto divergence-free fields.
    pub projected_data: bool,
}

const DIVERGENCE_FACTOR: f64 = 1e6;

/// Divergence-free data: unchanged if the spectral divergence is below `1e-8`,
/// projected otherwise.
fn prepare_data(a0: &VectorField) -> Result<(VectorField, bool)> {
    if !a0.grid().is_periodic() {
        return Err(Error::NotPeriodic);
    }
    if spectral_divergence(a0)?.max_abs() <= 1e-8 {
        Ok((a0.clone(), false))
    } else {
        Ok((leray_project(a0)?, true))
    }
}

/// `N₂` over heat-flow probes: the data direction and two seeded random
/// divergence-free fields, all ordered pairs.
pub fn estimate_bilinear_constant(
    a0: &VectorField,
    cfg: &SolverConfig,
    seed: u64,
) -> Result<f64> {
    let grid = a0.grid();
    let mut rng = SplitMix64::new(seed);
    let band = (grid.counts().iter().min().copied().unwrap_or(4) / 8).clamp(1, 3);
    let mut probes = Vec::new();
    if a0.max_abs() > 0.0 {
        probes.push(a0.clone());
    }
    for _ in 0..2 {
        probes.push(random_divergence_free(grid, band, &mut rng)?);
    }
    let nodes = cfg.nodes();
    let flows = probes
        .iter()
        .map(|a| Trajectory::heat_flow(a, nodes.clone()))
        .collect::<Result<Vec<_>>>()?;
    let norms = flows
        .iter()
        .map(|f| xspace_norm(f, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for (i, u) in flows.iter().enumerate() {
        for (j, v) in flows.iter().enumerate() {
            let g = duhamel_trajectory(u, v, cfg)?;
            worst = worst.max(ratio(xspace_norm(&g, cfg)?, norms[i] * norms[j]));
        }
    }
    Ok(worst)
}

pub fn picard_solve(a0: &VectorField, cfg: &SolverConfig) -> Result<PicardOutcome> {
    picard_solve_with(a0, cfg, &PicardOptions::default())
}

pub fn picard_solve_with(
    a0: &VectorField,
    cfg: &SolverConfig,
    opts: &PicardOptions,
) -> Result<PicardOutcome> {
    cfg.validate()?;
    if a0.grid().n() != cfg.p.n() {
        return Err(Error::DimensionMismatch {
            expected: cfg.p.n(),
            got: a0.grid().n(),
        });
    }
    let (a0, projected_data) = prepare_data(a0)?;
    let nodes = cfg.nodes();
    let linear = Trajectory::heat_flow(&a0, nodes)?;
    let u0_x_norm = xspace_norm(&linear, cfg)?;
    let a0_norm = vector_mixed_norm(&a0, &cfg.p)?;

    let bilinear_constant = match opts.bilinear_constant {
        Some(c) => c,
        None if u0_x_norm == 0.0 => 0.0,
        None => estimate_bilinear_constant(&a0, cfg, opts.probe_seed)?,
    };
    let product = 4.0 * bilinear_constant * u0_x_norm;
    if cfg.smallness_guard && product >= 1.0 {
        return Err(Error::SmallnessGuard { product });
    }

    let mut current = match &opts.initial_guess {
        Some(g) => g.clone(),
        None => linear.clone(),
    };
    let mut differences = Vec::new();
    let mut iteration_ratios = Vec::new();
    let mut converged = false;
    let mut diverged = false;
    let mut iterations = 0;
    let blowup = DIVERGENCE_FACTOR * (1.0 + u0_x_norm);
    while iterations < cfg.max_iter {
        let next = linear.add(&duhamel_trajectory(&current, &current, cfg)?)?;
        iterations += 1;
        let diff = xspace_norm(&next.sub(&current)?, cfg)?;
        if let Some(&prev) = differences.last() {
            iteration_ratios.push(ratio(diff, prev));
        }
        differences.push(diff);
        current = next;
        if !diff.is_finite() || diff > blowup {
            diverged = true;
            break;
        }
        if diff <= cfg.picard_tol {
            converged = true;
            break;
        }
    }

    let residual = if converged {
        let image = linear.add(&duhamel_trajectory(&current, &current, cfg)?)?;
        Some(xspace_norm(&current.sub(&image)?, cfg)?)
    } else {
        None
    };
    let solution_x_norm = if diverged {
        f64::INFINITY
    } else {
        xspace_norm(&current, cfg)?
    };
    Ok(PicardOutcome {
        trajectory: current,
        linear,
        certificate: ContractionCertificate {
            u0_x_norm,
            bilinear_constant,
            linear_constant: ratio(u0_x_norm, a0_norm),
            product,
            satisfied: product < 1.0,
            iteration_ratios,
        },
        iterations,
        converged,
        diverged,
        differences,
        residual,
        solution_x_norm,
        projected_data,
    })
}

#[derive(Clone, Debug)]
pub struct LocalSolution {
    pub outcome: PicardOutcome,
    /// Horizon on which the certificate holds.
    pub t0: f64,
    pub halvings: usize,
    pub x_norm: f64,
    pub y_norm: f64,
    /// `‖u‖_Y / (‖a₀‖_p + ‖a₀‖_p²)`.
    pub y_constant: f64,
}

/// Smallest horizon tried before giving up.
pub const MIN_HORIZON: f64 = 1e-12;

/// Halves the horizon until `4 N₂ ‖u₀‖_{X(0,T₀)} < 1`, with `N₂` measured
/// once on the full horizon, then runs Picard on `(0, T₀]`.
pub fn local_solve(a0: &VectorField, cfg: &SolverConfig, opts: &PicardOptions) -> Result<LocalSolution> {
    cfg.validate()?;
    let (a0, _) = prepare_data(a0)?;
    let n2 = match opts.bilinear_constant {
        Some(c) => c,
        None => estimate_bilinear_constant(&a0, cfg, opts.probe_seed)?,
    };
    let mut t0 = cfg.horizon;
    let mut halvings = 0;
    let local_cfg = loop {
        let trial = cfg.with_horizon(t0);
        let linear = Trajectory::heat_flow(&a0, trial.nodes())?;
        if 4.0 * n2 * xspace_norm(&linear, &trial)? < 1.0 {
            break trial;
        }
        t0 *= 0.5;
        halvings += 1;
        if t0 < MIN_HORIZON {
            return Err(Error::HorizonUnderflow { t0 });
        }
    };
    let local_opts = PicardOptions {
        bilinear_constant: Some(n2),
        initial_guess: None,
        probe_seed: opts.probe_seed,
    };
    let outcome = picard_solve_with(&a0, &local_cfg, &local_opts)?;
    let x_norm = xspace_norm(&outcome.trajectory, &local_cfg)?;
    let y_norm = yspace_norm(&outcome.trajectory, &local_cfg)?;
    let a = vector_mixed_norm(&a0, &cfg.p)?;
    Ok(LocalSolution {
        outcome,
        t0,
        halvings,
        x_norm,
        y_norm,
        y_constant: ratio(y_norm, a + a * a),
    })
}
