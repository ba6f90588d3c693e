//! TOML experiment configurations and their pre-compute validation.

use std::path::{Path, PathBuf};

use mnns_core::anisotropic::AnisotropicProfile;
use mnns_core::conv::check_young_exponents;
use mnns_core::mild::SolverConfig;
use mnns_core::{Boundary, MixedExponents, TensorGrid};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    VerifyYoung,
    VerifyDecay,
    VerifyRiesz,
    VerifyBilinear,
    ScalingCheck,
    Solve,
    LocalSolve,
    AnisoDemo,
}

impl CommandKind {
    /// Table holding the command's parameters.
    fn section(self) -> &'static str {
        match self {
            CommandKind::VerifyYoung => "young",
            CommandKind::VerifyDecay => "decay",
            CommandKind::VerifyRiesz => "riesz",
            CommandKind::VerifyBilinear => "bilinear",
            CommandKind::ScalingCheck => "scaling",
            CommandKind::Solve | CommandKind::LocalSolve => "solve",
            CommandKind::AnisoDemo => "aniso",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Every command except `aniso-demo`, which builds its own boxes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<TensorGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub young: Option<YoungParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decay: Option<DecayParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub riesz: Option<RieszParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bilinear: Option<BilinearParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling: Option<ScalingParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aniso: Option<AnisoParams>,
}

/// Fixed `(p, q, r)` with `1/p_k + 1 = 1/q_k + 1/r_k`, or seeded random triples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YoungParams {
    pub cases: usize,
    pub slack: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<MixedExponents>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<MixedExponents>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<MixedExponents>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayPair {
    pub q: MixedExponents,
    pub p: MixedExponents,
}

/// Explicit `pairs` run first, then `random_pairs` seeded draws.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayParams {
    #[serde(default)]
    pub pairs: Vec<DecayPair>,
    #[serde(default)]
    pub random_pairs: usize,
    pub times: Vec<f64>,
    pub slope_tolerance: f64,
    pub core: f64,
    pub cut: f64,
    pub width: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RieszParams {
    pub cases: usize,
    pub band: usize,
    pub identity_tolerance: f64,
    /// Exponents in `(1, ∞)` for the boundedness probe.
    pub p: MixedExponents,
    pub ratio_budget: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearParams {
    pub p: MixedExponents,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub times: Vec<f64>,
    pub quad_nodes: usize,
    pub delta: f64,
    /// Seeded divergence-free data; every ordered pair is probed.
    pub fields: usize,
    pub band: usize,
    pub trajectory_nodes: usize,
    pub budget: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingParams {
    pub exponents: Vec<MixedExponents>,
    pub lambdas: Vec<f64>,
    /// Gaussian widths `a_k` of the test field `Π e^{-x_k²/4a_k}` times a seeded tilt.
    pub widths: Vec<f64>,
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialData {
    #[serde(rename = "taylor-green-3d")]
    TaylorGreen3d,
    #[serde(rename = "taylor-green-2d-extruded")]
    TaylorGreen2dExtruded,
    Abc,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveParams {
    pub data: InitialData,
    pub epsilon: f64,
    pub p: MixedExponents,
    pub q: MixedExponents,
    pub horizon: f64,
    pub time_nodes: usize,
    pub quad_nodes: usize,
    pub first_node_fraction: f64,
    pub picard_tol: f64,
    pub max_iter: usize,
    #[serde(default)]
    pub smallness_guard: bool,
    /// Steps of the time-stepping comparison; 0 skips it.
    #[serde(default)]
    pub oracle_steps: usize,
    #[serde(default = "default_oracle_tolerance")]
    pub oracle_tolerance: f64,
    #[serde(default)]
    pub save_trajectory: bool,
}

fn default_oracle_tolerance() -> f64 {
    1e-3
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnisoParams {
    pub profile: AnisotropicProfile,
    pub p: MixedExponents,
    pub plain: f64,
    pub half_widths: Vec<f64>,
    pub spacing: f64,
    /// Upper bound on the last mixed-norm growth slope.
    pub mixed_slope_bound: f64,
    /// The last plain slope must reach this share of `max(0, 1/plain - a)`.
    pub plain_slope_share: f64,
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn axis_table(name: &str, e: &MixedExponents) -> String {
    e.as_slice()
        .iter()
        .enumerate()
        .map(|(k, x)| format!("\n  axis {k}: {name} = {x}, 1/{name} = {:.6}", x.reciprocal()))
        .collect()
}

fn check_dim(what: &str, e: &MixedExponents, n: usize) -> Result<(), CliError> {
    if e.n() != n {
        return Err(config_error(format!(
            "{what} has {} entries but the grid has {n} axes",
            e.n()
        )));
    }
    Ok(())
}

fn check_times(what: &str, times: &[f64]) -> Result<(), CliError> {
    if times.len() < 2 || times[0] <= 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(config_error(format!(
            "{what} must hold at least two positive increasing times"
        )));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| config_error(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs serialize")
    }

    fn missing(&self) -> CliError {
        config_error(format!(
            "command {:?} needs a [{}] table",
            self.command,
            self.command.section()
        ))
    }

    pub fn grid(&self) -> Result<&TensorGrid, CliError> {
        self.grid
            .as_ref()
            .ok_or_else(|| config_error(format!("command {:?} needs a [grid] table", self.command)))
    }

    /// Checks every hypothesis of the targeted result; runs before any compute.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.command == CommandKind::AnisoDemo {
            return self.validate_aniso();
        }
        let grid = self.grid()?;
        let n = grid.n();
        let periodic = grid.boundary() == Boundary::Periodic;
        match self.command {
            CommandKind::VerifyYoung => {
                let y = self.young.as_ref().ok_or_else(|| self.missing())?;
                if periodic {
                    return Err(config_error("verify-young needs a truncated grid"));
                }
                if y.cases == 0 || !(y.slack >= 0.0) {
                    return Err(config_error("young: cases must be positive and slack non-negative"));
                }
                match (&y.p, &y.q, &y.r) {
                    (None, None, None) => {}
                    (Some(p), Some(q), Some(r)) => {
                        for (name, e) in [("p", p), ("q", q), ("r", r)] {
                            check_dim(&format!("young.{name}"), e, n)?;
                        }
                        check_young_exponents(p, q, r).map_err(|e| {
                            config_error(format!(
                                "{e}{}{}{}",
                                axis_table("p", p),
                                axis_table("q", q),
                                axis_table("r", r)
                            ))
                        })?;
                    }
                    _ => return Err(config_error("young: give all of p, q, r or none")),
                }
            }
            CommandKind::VerifyDecay => {
                let d = self.decay.as_ref().ok_or_else(|| self.missing())?;
                if periodic {
                    return Err(config_error("verify-decay needs a truncated grid"));
                }
                if d.pairs.is_empty() && d.random_pairs == 0 {
                    return Err(config_error("decay: no exponent pairs requested"));
                }
                check_times("decay.times", &d.times)?;
                for (i, pair) in d.pairs.iter().enumerate() {
                    check_dim(&format!("decay.pairs[{i}].p"), &pair.p, n)?;
                    check_dim(&format!("decay.pairs[{i}].q"), &pair.q, n)?;
                    for k in 0..n {
                        if pair.q.get(k).reciprocal() < pair.p.get(k).reciprocal() {
                            return Err(config_error(format!(
                                "decay.pairs[{i}]: axis {k}: q = {} exceeds p = {}",
                                pair.q.get(k),
                                pair.p.get(k)
                            )));
                        }
                    }
                }
                if !(d.core > 0.0 && d.width > 0.0 && d.cut > d.core) {
                    return Err(config_error("decay: need core > 0, width > 0 and cut > core"));
                }
            }
            CommandKind::VerifyRiesz => {
                let r = self.riesz.as_ref().ok_or_else(|| self.missing())?;
                if !periodic {
                    return Err(config_error("verify-riesz needs a periodic grid"));
                }
                check_dim("riesz.p", &r.p, n)?;
                for (k, e) in r.p.as_slice().iter().enumerate() {
                    let v = e.value();
                    if !(v > 1.0 && v.is_finite()) {
                        return Err(config_error(format!(
                            "riesz.p: axis {k}: p = {e} outside (1, inf){}",
                            axis_table("p", &r.p)
                        )));
                    }
                }
                if r.cases == 0 || grid.counts().iter().any(|&m| 2 * r.band >= m) {
                    return Err(config_error("riesz: need cases > 0 and 2 band < every count"));
                }
            }
            CommandKind::VerifyBilinear => {
                let b = self.bilinear.as_ref().ok_or_else(|| self.missing())?;
                if !periodic {
                    return Err(config_error("verify-bilinear needs a periodic grid"));
                }
                check_dim("bilinear.p", &b.p, n)?;
                let spec = crate::suites::bilinear_spec(b);
                spec.validate().map_err(|e| config_error(format!("bilinear: {e}")))?;
                check_times("bilinear.times", &b.times)?;
                if b.fields == 0 || b.trajectory_nodes < 2 {
                    return Err(config_error("bilinear: need fields > 0 and trajectory_nodes >= 2"));
                }
                if grid.counts().iter().any(|&m| 2 * b.band >= m) {
                    return Err(config_error("bilinear: band not resolved by the grid"));
                }
            }
            CommandKind::ScalingCheck => {
                let s = self.scaling.as_ref().ok_or_else(|| self.missing())?;
                if periodic {
                    return Err(config_error("scaling-check needs a truncated grid"));
                }
                if s.exponents.is_empty() || s.lambdas.is_empty() {
                    return Err(config_error("scaling: need exponents and lambdas"));
                }
                for (i, e) in s.exponents.iter().enumerate() {
                    check_dim(&format!("scaling.exponents[{i}]"), e, n)?;
                }
                if s.widths.len() != n || s.widths.iter().any(|w| !(*w > 0.0)) {
                    return Err(config_error("scaling.widths needs one positive width per axis"));
                }
                if s.lambdas.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
                    return Err(config_error("scaling.lambdas must be positive"));
                }
            }
            CommandKind::Solve | CommandKind::LocalSolve => {
                let s = self.solve.as_ref().ok_or_else(|| self.missing())?;
                if !periodic {
                    return Err(config_error("the mild solver needs a periodic grid"));
                }
                if n < 3 {
                    return Err(config_error(format!(
                        "solving needs n >= 3: p_k > 2 on every axis with sum 1/p_k = 1 has no \
                         solution for n = {n}{}",
                        axis_table("p", &s.p)
                    )));
                }
                check_dim("solve.p", &s.p, n)?;
                check_dim("solve.q", &s.q, n)?;
                let cfg = solver_config(s);
                cfg.validate().map_err(|e| {
                    config_error(format!("{e}{}{}", axis_table("p", &s.p), axis_table("q", &s.q)))
                })?;
                if !(s.epsilon.is_finite()) {
                    return Err(config_error("solve.epsilon must be finite"));
                }
                if matches!(s.data, InitialData::TaylorGreen3d | InitialData::TaylorGreen2dExtruded | InitialData::Abc)
                    && n != 3
                {
                    return Err(config_error("the named flows are three-dimensional"));
                }
            }
            CommandKind::AnisoDemo => unreachable!("handled above"),
        }
        Ok(())
    }

    fn validate_aniso(&self) -> Result<(), CliError> {
        let a = self.aniso.as_ref().ok_or_else(|| self.missing())?;
        if self.grid.is_some() {
            return Err(config_error("aniso-demo builds its own grids; drop the [grid] table"));
        }
        if a.p.n() < 2 {
            return Err(config_error("aniso-demo needs at least two axes"));
        }
        let prof = &a.profile;
        if !(prof.a > 0.0 && prof.b > 0.0 && prof.core > 0.0) {
            return Err(config_error("aniso.profile: a, b and core must be positive"));
        }
        if !(a.plain >= 1.0 && a.plain.is_finite()) {
            return Err(config_error(format!("aniso.plain = {} outside [1, inf)", a.plain)));
        }
        if a.half_widths.len() < 2 || !(a.spacing > 0.0) {
            return Err(config_error("aniso: need two or more half-widths and a positive spacing"));
        }
        Ok(())
    }
}

pub fn solver_config(s: &SolveParams) -> SolverConfig {
    SolverConfig {
        p: s.p.clone(),
        q: s.q.clone(),
        horizon: s.horizon,
        time_nodes: s.time_nodes,
        quad_nodes: s.quad_nodes,
        first_node_fraction: s.first_node_fraction,
        picard_tol: s.picard_tol,
        max_iter: s.max_iter,
        smallness_guard: s.smallness_guard,
        enforce_hypotheses: true,
    }
}
