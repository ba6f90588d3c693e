//! Shipped configurations, printed as TOML by `mnns preset <name>`.

use std::f64::consts::PI;

use mnns_core::anisotropic::AnisotropicProfile;
use mnns_core::{Boundary, MixedExponents, TensorGrid};

use crate::config::{
    AnisoParams, CommandKind, DecayPair, DecayParams, ExperimentConfig, InitialData, SolveParams,
};
use crate::CliError;

pub const NAMES: [&str; 4] = ["tg2d-small", "tg2d-large-local", "aniso-demo", "decay-matrix"];

fn exps(values: &[f64]) -> MixedExponents {
    MixedExponents::from_f64s(values).expect("preset exponents are valid")
}

fn empty(command: CommandKind, grid: Option<TensorGrid>) -> ExperimentConfig {
    ExperimentConfig {
        command,
        seed: 1,
        output_dir: None,
        grid,
        young: None,
        decay: None,
        riesz: None,
        bilinear: None,
        scaling: None,
        solve: None,
        aniso: None,
    }
}

fn solver_grid() -> TensorGrid {
    TensorGrid::cube(3, PI, 32, Boundary::Periodic).expect("valid grid")
}

/// The planar vortex extruded along `x₃`: no `n = 2` exponents satisfy the
/// solver hypotheses, so the 2D flow is run on a 3D box.
fn vortex(epsilon: f64, oracle_steps: usize) -> SolveParams {
    SolveParams {
        data: InitialData::TaylorGreen2dExtruded,
        epsilon,
        p: exps(&[3.0; 3]),
        q: exps(&[6.0; 3]),
        horizon: 1.0,
        time_nodes: 16,
        quad_nodes: 12,
        first_node_fraction: 1e-3,
        picard_tol: 1e-8,
        max_iter: 10,
        smallness_guard: false,
        oracle_steps,
        oracle_tolerance: 1e-3,
        save_trajectory: false,
    }
}

pub fn preset(name: &str) -> Result<(ExperimentConfig, &'static str), CliError> {
    match name {
        "tg2d-small" => {
            let mut c = empty(CommandKind::Solve, Some(solver_grid()));
            c.solve = Some(vortex(0.5, 100));
            Ok((c, "about 40 s on one core"))
        }
        "tg2d-large-local" => {
            let mut c = empty(CommandKind::LocalSolve, Some(solver_grid()));
            c.solve = Some(vortex(50.0, 0));
            Ok((c, "about 45 s on one core"))
        }
        "aniso-demo" => {
            let mut c = empty(CommandKind::AnisoDemo, None);
            c.aniso = Some(AnisoParams {
                profile: AnisotropicProfile {
                    a: 0.25,
                    b: 1.5,
                    core: 1.0,
                },
                p: exps(&[8.0, 16.0 / 7.0, 16.0 / 7.0]),
                plain: 3.0,
                half_widths: vec![16.0, 32.0, 64.0, 128.0],
                spacing: 0.5,
                mixed_slope_bound: 0.02,
                plain_slope_share: 0.5,
            });
            Ok((c, "a few seconds"))
        }
        "decay-matrix" => {
            let inf = f64::INFINITY;
            let pairs = [
                ([2.0, 2.0, 2.0], [4.0, 4.0, 4.0]),
                ([5.0, 5.0, 5.0], [inf, inf, inf]),
                ([3.0, 3.0, 3.0], [inf, 6.0, inf]),
                ([1.25, 2.0, 4.0], [2.5, 4.0, inf]),
                ([1.5, 4.0, 2.0], [6.0, inf, 4.0]),
                ([1.0, 1.5, 1.0], [inf, 3.0, 2.0]),
            ];
            let mut c = empty(
                CommandKind::VerifyDecay,
                Some(TensorGrid::cube(3, 32768.0, 65536, Boundary::Truncated).expect("valid grid")),
            );
            c.decay = Some(DecayParams {
                pairs: pairs
                    .iter()
                    .map(|(q, p)| DecayPair { q: exps(q), p: exps(p) })
                    .collect(),
                random_pairs: 6,
                times: (0..6).map(|i| 800.0 * 8f64.powf(i as f64 / 5.0)).collect(),
                slope_tolerance: 0.05,
                core: 4.0,
                cut: 24000.0,
                width: 500.0,
            });
            Ok((c, "about 10 s on one core"))
        }
        other => Err(CliError::Config(format!(
            "unknown preset {other:?}; known presets: {}",
            NAMES.join(", ")
        ))),
    }
}

/// TOML text with a header naming the preset and its expected runtime.
pub fn render(name: &str) -> Result<String, CliError> {
    let (cfg, runtime) = preset(name)?;
    Ok(format!(
        "# mnns preset {name}\n# expected runtime: {runtime}\n{}",
        cfg.to_toml()
    ))
}
