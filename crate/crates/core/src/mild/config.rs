use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::MixedExponents;

/// Exponents, horizon and discretization of a mild-solution run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Gradient exponents; `p_k ∈ (2, ∞)` with `Σ 1/p_k = 1`.
    pub p: MixedExponents,
    /// Value exponents; `q_k ∈ [p_k, ∞)`, `δ = Σ 1/q_k ∈ [0.1, 0.9]`.
    pub q: MixedExponents,
    pub horizon: f64,
    pub time_nodes: usize,
    /// Midpoint nodes per half of the split Duhamel integral.
    pub quad_nodes: usize,
    /// `t_1 / T` for the geometric mesh.
    pub first_node_fraction: f64,
    pub picard_tol: f64,
    pub max_iter: usize,
    pub smallness_guard: bool,
    /// When false only the structural checks run, which admits 2D operator
    /// studies outside the well-posedness hypotheses.
    pub enforce_hypotheses: bool,
}

impl SolverConfig {
    pub fn new(p: MixedExponents, q: MixedExponents, horizon: f64) -> Result<Self> {
        let cfg = Self {
            p,
            q,
            horizon,
            time_nodes: 40,
            quad_nodes: 32,
            first_node_fraction: 1e-3,
            picard_tol: 1e-8,
            max_iter: 10,
            smallness_guard: false,
            enforce_hypotheses: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn delta(&self) -> f64 {
        self.q.criticality_sum()
    }

    pub fn with_horizon(&self, horizon: f64) -> Self {
        Self {
            horizon,
            ..self.clone()
        }
    }

    /// `t_i = T r^{i-M}`, `i = 1..M`, with `t_1 = first_node_fraction · T`.
    pub fn nodes(&self) -> Vec<f64> {
        let m = self.time_nodes;
        if m == 1 {
            return vec![self.horizon];
        }
        let log_ratio = -self.first_node_fraction.ln() / (m - 1) as f64;
        (0..m)
            .map(|i| {
                if i == m - 1 {
                    self.horizon
                } else {
                    self.horizon * (log_ratio * (i as f64 - (m - 1) as f64)).exp()
                }
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.p.n();
        if self.q.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.q.n(),
            });
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::InvalidParameter(format!("horizon {}", self.horizon)));
        }
        if self.time_nodes == 0 || self.quad_nodes == 0 {
            return Err(Error::InvalidParameter("node counts must be positive".into()));
        }
        if !(self.first_node_fraction > 0.0 && self.first_node_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "first node fraction {}",
                self.first_node_fraction
            )));
        }
        if !(self.picard_tol > 0.0) {
            return Err(Error::InvalidParameter("picard tolerance must be positive".into()));
        }
        let delta = self.delta();
        if !(0.1..=0.9).contains(&delta) {
            return Err(Error::Hypothesis(format!(
                "delta = sum 1/q_k = {delta} outside [0.1, 0.9]"
            )));
        }
        if !self.enforce_hypotheses {
            return Ok(());
        }
        for k in 0..n {
            let (p, q) = (self.p.get(k).value(), self.q.get(k).value());
            if !(p > 2.0 && p.is_finite()) {
                return Err(Error::Hypothesis(format!("axis {k}: p = {p} not in (2, inf)")));
            }
            if !(q >= p && q.is_finite()) {
                return Err(Error::Hypothesis(format!("axis {k}: q = {q} not in [p, inf)")));
            }
        }
        let s = self.p.criticality_sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::Hypothesis(format!(
                "sum 1/p_k = {s} differs from 1; p_k > 2 with sum 1 needs n >= 3"
            )));
        }
        Ok(())
    }
}
