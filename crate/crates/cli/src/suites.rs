//! One runner per command kind. Cases run in parallel, each from its own
//! forked stream of the configured seed, and are reported in index order.

use std::path::Path;

use mnns_core::anisotropic::growth_curve;
use mnns_core::conv::young_ratio;
use mnns_core::flows::{abc_flow, random_band_limited, random_divergence_free, taylor_green_2d_extruded, taylor_green_3d};
use mnns_core::heat::profiles::{critical_datum, CriticalScales};
use mnns_core::heat::{measure_decay, predicted_slope};
use mnns_core::io::save_trajectory;
use mnns_core::mild::{
    bilinear_probe, local_solve, picard_solve_with, timestep_oracle, xspace_norm, BilinearProbeSpec, PicardOptions,
    Trajectory,
};
use mnns_core::norm::scaling_ratio_analytic;
use mnns_core::rng::SplitMix64;
use mnns_core::spectral::{
    leray_boundedness_probe, leray_project, riesz_boundedness_probe, riesz_transform, spectral_divergence,
};
use mnns_core::{Exponent, MixedExponents, ScalarField, TensorGrid, VectorField};
use rayon::prelude::*;
use serde_json::json;

use crate::config::{
    solver_config, AnisoParams, BilinearParams, CommandKind, DecayParams, ExperimentConfig, InitialData, RieszParams,
    ScalingParams, SolveParams, YoungParams,
};
use crate::report::{CaseRecord, Check, InputDigest, Relation, Summary};
use crate::CliError;

type CaseResult = mnns_core::Result<CaseRecord>;

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let rng = SplitMix64::new(cfg.seed);
    match cfg.command {
        CommandKind::VerifyYoung => young(cfg.grid()?, cfg.young.as_ref().expect("validated"), &rng),
        CommandKind::VerifyDecay => decay(cfg.grid()?, cfg.decay.as_ref().expect("validated"), &rng),
        CommandKind::VerifyRiesz => riesz(cfg.grid()?, cfg.riesz.as_ref().expect("validated"), &rng),
        CommandKind::VerifyBilinear => bilinear(cfg.grid()?, cfg.bilinear.as_ref().expect("validated"), &rng),
        CommandKind::ScalingCheck => scaling(cfg.grid()?, cfg.scaling.as_ref().expect("validated"), &rng),
        CommandKind::Solve => solve(cfg.grid()?, cfg.solve.as_ref().expect("validated"), cfg.seed, out),
        CommandKind::LocalSolve => local(cfg.grid()?, cfg.solve.as_ref().expect("validated"), cfg.seed),
        CommandKind::AnisoDemo => aniso(cfg.aniso.as_ref().expect("validated")),
    }
}

/// Runs `cases` in parallel; a failing case is recorded, not propagated.
fn collect(count: usize, case: impl Fn(usize) -> (String, CaseResult) + Sync) -> Vec<CaseRecord> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let (label, result) = case(i);
            match result {
                Ok(rec) => rec.finish(),
                Err(e) => CaseRecord::new(i, label, json!(null), InputDigest::new()).failed(e.to_string()),
            }
        })
        .collect()
}

fn max_of(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    values.into_iter().fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
}

// ----------------------------------------------------------------- Young

/// Two anisotropic Gaussians or a random-valued box, well inside the grid.
fn young_field(grid: &TensorGrid, rng: &mut SplitMix64) -> mnns_core::Result<ScalarField> {
    let n = grid.n();
    let l = grid.half_widths().iter().copied().fold(f64::INFINITY, f64::min);
    if rng.next_f64() < 0.5 {
        let bumps: Vec<(f64, Vec<f64>, Vec<f64>)> = (0..2)
            .map(|_| {
                let amp = rng.uniform(-1.0, 1.0);
                let centre = (0..n).map(|_| rng.uniform(-l / 8.0, l / 8.0)).collect();
                let width = (0..n).map(|_| rng.uniform(l / 64.0, l / 16.0)).collect();
                (amp, centre, width)
            })
            .collect();
        ScalarField::from_fn(grid, |x| {
            bumps
                .iter()
                .map(|(a, c, w)| {
                    let r2: f64 = (0..n).map(|k| ((x[k] - c[k]) / w[k]).powi(2)).sum();
                    a * (-0.5 * r2).exp()
                })
                .sum()
        })
    } else {
        let half: Vec<f64> = (0..n).map(|_| rng.uniform(l / 16.0, l / 4.0)).collect();
        let values: Vec<f64> = (0..grid.len()).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let mut x = vec![0.0; n];
        let data = (0..grid.len())
            .map(|i| {
                grid.point(i, &mut x);
                if x.iter().zip(&half).all(|(v, h)| v.abs() <= *h) {
                    values[i]
                } else {
                    0.0
                }
            })
            .collect();
        ScalarField::new(grid.clone(), data)
    }
}

/// Reciprocals drawn so that `1/p = 1/q + 1/r - 1 >= 0`, endpoints included.
fn young_exponents(n: usize, rng: &mut SplitMix64) -> (MixedExponents, MixedExponents, MixedExponents) {
    let (mut p, mut q, mut r) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..n {
        let rq = match rng.below(6) {
            0 => 1.0,
            1 => 0.0,
            _ => rng.next_f64(),
        };
        let rr = if rng.below(6) == 0 { 1.0 } else { rng.uniform(1.0 - rq, 1.0) };
        q.push(Exponent::from_reciprocal(rq));
        r.push(Exponent::from_reciprocal(rr));
        p.push(Exponent::from_reciprocal((rq + rr - 1.0).max(0.0)));
    }
    let mk = |v| MixedExponents::new(v).expect("valid exponents");
    (mk(p), mk(q), mk(r))
}

fn young(grid: &TensorGrid, y: &YoungParams, base: &SplitMix64) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let cases = collect(y.cases, |i| {
        let label = format!("young case {i}");
        let run = || -> CaseResult {
            let mut rng = base.fork(i as u64);
            let f = young_field(grid, &mut rng)?;
            let g = young_field(grid, &mut rng)?;
            let (p, q, r) = match (&y.p, &y.q, &y.r) {
                (Some(p), Some(q), Some(r)) => (p.clone(), q.clone(), r.clone()),
                _ => young_exponents(grid.n(), &mut rng),
            };
            let ratio = young_ratio(&f, &g, &p, &q, &r)?;
            let inputs = json!({"p": p, "q": q, "r": r});
            let digest = InputDigest::new().with_samples(f.data()).with_samples(g.data());
            Ok(CaseRecord::new(i, label.clone(), inputs, digest).check(Check::new(
                "young_ratio",
                ratio,
                Relation::AtMost,
                1.0,
                y.slack,
            )))
        };
        (label.clone(), run())
    });
    let summary = Summary {
        max_ratio: max_of(cases.iter().filter_map(|c| c.checks.first().map(|k| k.measured))),
        ..Summary::default()
    };
    Ok((cases, summary))
}

// ----------------------------------------------------------------- decay

/// Axiswise `q <= p` with `1/q - 1/p >= 0.1` unless `p = ∞`.
fn decay_pair(n: usize, rng: &mut SplitMix64) -> (MixedExponents, MixedExponents) {
    let (mut p, mut q) = (Vec::new(), Vec::new());
    for _ in 0..n {
        let rq = rng.uniform(0.15, 1.0);
        let rp = if rng.below(4) == 0 { 0.0 } else { rng.uniform(0.0, rq - 0.1) };
        q.push(Exponent::from_reciprocal(rq));
        p.push(Exponent::from_reciprocal(rp));
    }
    (
        MixedExponents::new(p).expect("valid"),
        MixedExponents::new(q).expect("valid"),
    )
}

fn decay(grid: &TensorGrid, d: &DecayParams, base: &SplitMix64) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let scales = CriticalScales {
        core: d.core,
        cut: d.cut,
        width: d.width,
    };
    let total = d.pairs.len() + d.random_pairs;
    let cases = collect(total, |i| {
        let (q, p) = match d.pairs.get(i) {
            Some(pair) => (pair.q.clone(), pair.p.clone()),
            None => {
                let (p, q) = decay_pair(grid.n(), &mut base.fork(i as u64));
                (q, p)
            }
        };
        let label = format!("q={q} p={p}");
        let run = || -> CaseResult {
            let u0 = critical_datum(grid, &q, &p, scales)?;
            let inputs = json!({"q": q, "p": p, "times": d.times});
            let mut rec = CaseRecord::new(i, label.clone(), inputs, InputDigest::new());
            for (name, grad) in [("value_slope", false), ("gradient_slope", true)] {
                let fit = measure_decay(&u0, &p, &q, &d.times, grad)?;
                rec = rec
                    .check(Check::new(
                        name,
                        fit.fitted_slope,
                        Relation::Near,
                        predicted_slope(&p, &q, grad),
                        d.slope_tolerance,
                    ))
                    .value(&format!("{name}_max_residual"), fit.max_residual)
                    .value(&format!("{name}_fitted_times"), fit.times.len() as f64);
            }
            Ok(rec)
        };
        (label.clone(), run())
    });
    let summary = Summary {
        fitted_slopes: cases.iter().flat_map(|c| c.checks.iter().map(|k| k.measured)).collect(),
        values: [(
            "max_slope_error".to_string(),
            max_of(cases.iter().flat_map(|c| c.checks.iter().map(|k| (k.measured - k.target).abs())))
                .unwrap_or(f64::NAN),
        )]
        .into(),
        ..Summary::default()
    };
    Ok((cases, summary))
}

// ----------------------------------------------------------------- Riesz

fn riesz(grid: &TensorGrid, r: &RieszParams, base: &SplitMix64) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let n = grid.n();
    let cases = collect(r.cases, |i| {
        let label = format!("band-limited field {i}");
        let run = || -> CaseResult {
            let mut rng = base.fork(i as u64);
            let v = VectorField::new(
                (0..n)
                    .map(|_| random_band_limited(grid, r.band, &mut rng))
                    .collect::<mnns_core::Result<Vec<_>>>()?,
            )?;
            let pv = leray_project(&v)?;
            let idem = leray_project(&pv)?.max_abs_diff(&pv)?;
            let div = spectral_divergence(&pv)?.max_abs();
            let f = v.component(0);
            let mut sum = ScalarField::zeros(grid);
            for j in 0..n {
                sum = sum.add(&riesz_transform(&riesz_transform(f, j)?, j)?)?;
            }
            let mean = f.mean();
            let resolvent = sum.max_abs_diff(&f.map(|x| mean - x)?)?;
            let riesz_ratio = riesz_boundedness_probe(std::slice::from_ref(f), &r.p)?;
            let leray_ratio = leray_boundedness_probe(std::slice::from_ref(&v), &r.p)?;
            let mut digest = InputDigest::new();
            for c in v.components() {
                digest = digest.with_samples(c.data());
            }
            let tol = r.identity_tolerance;
            Ok(CaseRecord::new(i, label.clone(), json!({"band": r.band, "p": r.p}), digest)
                .check(Check::new("leray_idempotence", idem, Relation::AtMost, 0.0, tol))
                .check(Check::new("leray_divergence", div, Relation::AtMost, 0.0, tol))
                .check(Check::new("riesz_square_sum", resolvent, Relation::AtMost, 0.0, tol))
                .check(Check::new("riesz_ratio", riesz_ratio, Relation::AtMost, r.ratio_budget, 0.0))
                .check(Check::new("leray_ratio", leray_ratio, Relation::AtMost, r.ratio_budget, 0.0)))
        };
        (label.clone(), run())
    });
    let ratio_of = |name: &str| {
        max_of(
            cases
                .iter()
                .flat_map(|c| c.checks.iter().filter(|k| k.quantity == name).map(|k| k.measured)),
        )
        .unwrap_or(f64::NAN)
    };
    let summary = Summary {
        max_ratio: Some(ratio_of("riesz_ratio").max(ratio_of("leray_ratio"))),
        values: [
            ("max_riesz_ratio".to_string(), ratio_of("riesz_ratio")),
            ("max_leray_ratio".to_string(), ratio_of("leray_ratio")),
        ]
        .into(),
        ..Summary::default()
    };
    Ok((cases, summary))
}

// -------------------------------------------------------------- bilinear

pub fn bilinear_spec(b: &BilinearParams) -> BilinearProbeSpec {
    BilinearProbeSpec {
        p: b.p.clone(),
        alpha: b.alpha.clone(),
        beta: b.beta.clone(),
        gamma: b.gamma.clone(),
        times: b.times.clone(),
        quad_nodes: b.quad_nodes,
        delta: b.delta,
    }
}

fn bilinear(grid: &TensorGrid, b: &BilinearParams, base: &SplitMix64) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let spec = bilinear_spec(b);
    let horizon = *b.times.last().expect("validated");
    let m = b.trajectory_nodes;
    // Geometric nodes from 1e-3 T to T.
    let nodes: Vec<f64> = (0..m)
        .map(|i| horizon * 1e-3f64.powf(1.0 - i as f64 / (m - 1) as f64))
        .collect();
    let data: Vec<(VectorField, Trajectory)> = (0..b.fields)
        .into_par_iter()
        .map(|i| {
            let a = random_divergence_free(grid, b.band, &mut base.fork(i as u64))?;
            let t = Trajectory::heat_flow(&a, nodes.clone())?;
            Ok((a, t))
        })
        .collect::<mnns_core::Result<_>>()
        .map_err(|e: mnns_core::Error| CliError::Compute(e.to_string()))?;
    let k = b.fields;
    let cases = collect(k * k, |c| {
        let (i, j) = (c / k, c % k);
        let label = format!("G(u{i}, u{j})");
        let run = || -> CaseResult {
            let report = bilinear_probe(&data[i].1, &data[j].1, &spec)?;
            let digest = data[i]
                .0
                .components()
                .iter()
                .chain(data[j].0.components())
                .fold(InputDigest::new(), |d, f| d.with_samples(f.data()));
            let mut rec = CaseRecord::new(c, label.clone(), json!({"u": i, "v": j, "spec": spec}), digest)
                .check(Check::new("max_ratio", report.max_ratio, Relation::AtMost, b.budget, 0.0));
            for (t, r) in report.times.iter().zip(&report.ratios) {
                rec = rec.value(&format!("ratio_t={t}"), *r);
            }
            if let Some(g) = &report.gradient_ratios {
                rec = rec.value("gradient_max_ratio", max_of(g.iter().copied()).unwrap_or(f64::NAN));
            }
            Ok(rec)
        };
        (label.clone(), run())
    });
    let summary = Summary {
        max_ratio: max_of(cases.iter().filter_map(|c| c.checks.first().map(|k| k.measured))),
        values: [("budget".to_string(), b.budget)].into(),
        ..Summary::default()
    };
    Ok((cases, summary))
}

// --------------------------------------------------------------- scaling

fn scaling(grid: &TensorGrid, s: &ScalingParams, base: &SplitMix64) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let mut rng = base.fork(0);
    let tilt: Vec<f64> = (0..grid.n()).map(|_| rng.uniform(-0.3, 0.3)).collect();
    let widths = s.widths.clone();
    let f = move |x: &[f64]| {
        let g: f64 = x.iter().zip(&widths).map(|(v, a)| -v * v / (4.0 * a)).sum::<f64>().exp();
        let t: f64 = x.iter().zip(&tilt).map(|(v, c)| v * c).sum();
        (1.0 + t) * g
    };
    let combos: Vec<(f64, &MixedExponents)> = s
        .lambdas
        .iter()
        .flat_map(|&l| s.exponents.iter().map(move |p| (l, p)))
        .collect();
    let cases = collect(combos.len(), |i| {
        let (lambda, p) = combos[i];
        let label = format!("lambda={lambda} p={p}");
        let run = || -> CaseResult {
            let measured = scaling_ratio_analytic(grid, &f, lambda, p)?;
            let predicted = lambda.powf(1.0 - p.criticality_sum());
            let inputs = json!({"lambda": lambda, "p": p, "widths": s.widths});
            Ok(CaseRecord::new(i, label.clone(), inputs, InputDigest::new())
                .check(Check::new("scaling_ratio", measured, Relation::Near, predicted, s.tolerance))
                .value("criticality_sum", p.criticality_sum()))
        };
        (label.clone(), run())
    });
    let summary = Summary {
        values: [(
            "max_deviation".to_string(),
            max_of(cases.iter().flat_map(|c| c.checks.iter().map(|k| (k.measured - k.target).abs())))
                .unwrap_or(f64::NAN),
        )]
        .into(),
        ..Summary::default()
    };
    Ok((cases, summary))
}

// ----------------------------------------------------------------- solve

fn initial_data(grid: &TensorGrid, s: &SolveParams, seed: u64) -> mnns_core::Result<VectorField> {
    let base = match s.data {
        InitialData::TaylorGreen3d => taylor_green_3d(grid)?,
        InitialData::TaylorGreen2dExtruded => taylor_green_2d_extruded(grid)?,
        InitialData::Abc => abc_flow(grid)?,
        InitialData::Random => {
            let band = ((grid.counts().iter().min().copied().unwrap_or(4) - 1) / 2).min(2);
            random_divergence_free(grid, band, &mut SplitMix64::new(seed))?
        }
    };
    Ok(base.scale(s.epsilon))
}

fn solve_inputs(s: &SolveParams) -> serde_json::Value {
    json!({"data": s.data, "epsilon": s.epsilon, "p": s.p, "q": s.q, "horizon": s.horizon})
}

fn vector_digest(v: &VectorField) -> InputDigest {
    v.components().iter().fold(InputDigest::new(), |d, c| d.with_samples(c.data()))
}

fn relative_l2(a: &VectorField, b: &VectorField) -> mnns_core::Result<f64> {
    Ok(a.sub(b)?.l2_norm() / b.l2_norm().max(f64::MIN_POSITIVE))
}

fn solve(grid: &TensorGrid, s: &SolveParams, seed: u64, out: &Path) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let cfg = solver_config(s);
    let compute = |e: mnns_core::Error| CliError::Compute(e.to_string());
    let a0 = initial_data(grid, s, seed).map_err(compute)?;
    let opts = PicardOptions {
        probe_seed: seed,
        ..PicardOptions::default()
    };
    let label = format!("{:?} x {}", s.data, s.epsilon);
    let o = match picard_solve_with(&a0, &cfg, &opts) {
        Ok(o) => o,
        Err(e) => {
            let rec = CaseRecord::new(0, label, solve_inputs(s), vector_digest(&a0)).failed(e.to_string());
            return Ok((vec![rec], Summary::default()));
        }
    };
    let residual = o.residual.unwrap_or(f64::INFINITY);
    let u0x = o.certificate.u0_x_norm;
    let mut rec = CaseRecord::new(0, label, solve_inputs(s), vector_digest(&a0))
        .check(Check::flag("converged", o.converged))
        .check(Check::new("residual", residual, Relation::AtMost, 2.0 * cfg.picard_tol, 0.0))
        .check(Check::new("certificate_product", o.certificate.product, Relation::AtMost, 1.0, 0.0))
        .check(Check::new("solution_x_norm", o.solution_x_norm, Relation::AtMost, 2.0 * u0x, 1e-6))
        .value("iterations", o.iterations as f64)
        .value("u0_x_norm", u0x)
        .value("max_divergence", o.trajectory.max_divergence().map_err(compute)?);
    if s.oracle_steps > 0 {
        let oracle = timestep_oracle(o.trajectory.initial(), o.trajectory.times(), s.oracle_steps).map_err(compute)?;
        let mut worst = 0.0f64;
        for (u, v) in o.trajectory.states().iter().zip(oracle.states()) {
            worst = worst.max(relative_l2(u, v).map_err(compute)?);
        }
        rec = rec.check(Check::new("oracle_relative_l2", worst, Relation::AtMost, s.oracle_tolerance, 0.0));
    }
    if s.save_trajectory {
        save_trajectory(&out.join("trajectory"), &o.trajectory, &cfg).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let summary = Summary {
        certificate: Some(o.certificate.clone()),
        values: [
            ("residual".to_string(), residual),
            ("solution_x_norm".to_string(), o.solution_x_norm),
            ("linear_x_norm".to_string(), xspace_norm(&o.linear, &cfg).map_err(compute)?),
        ]
        .into(),
        ..Summary::default()
    };
    Ok((vec![rec.finish()], summary))
}

fn local(grid: &TensorGrid, s: &SolveParams, seed: u64) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let cfg = solver_config(s);
    let a0 = initial_data(grid, s, seed).map_err(|e| CliError::Compute(e.to_string()))?;
    let opts = PicardOptions {
        probe_seed: seed,
        ..PicardOptions::default()
    };
    let label = format!("{:?} x {}", s.data, s.epsilon);
    let base = CaseRecord::new(0, label, solve_inputs(s), vector_digest(&a0));
    let sol = match local_solve(&a0, &cfg, &opts) {
        Ok(sol) => sol,
        Err(e) => return Ok((vec![base.failed(e.to_string())], Summary::default())),
    };
    let o = &sol.outcome;
    let residual = o.residual.unwrap_or(f64::INFINITY);
    let rec = base
        .check(Check::new("t0", sol.t0, Relation::AtLeast, f64::MIN_POSITIVE, 0.0))
        .check(Check::flag("converged", o.converged))
        .check(Check::new("residual", residual, Relation::AtMost, 2.0 * cfg.picard_tol, 0.0))
        .check(Check::new("certificate_product", o.certificate.product, Relation::AtMost, 1.0, 0.0))
        .value("halvings", sol.halvings as f64)
        .value("iterations", o.iterations as f64)
        .value("x_norm", sol.x_norm)
        .value("y_norm", sol.y_norm)
        .value("y_constant", sol.y_constant);
    let summary = Summary {
        certificate: Some(o.certificate.clone()),
        values: [("t0".to_string(), sol.t0), ("residual".to_string(), residual)].into(),
        ..Summary::default()
    };
    Ok((vec![rec.finish()], summary))
}

// ----------------------------------------------------------------- aniso

fn aniso(a: &AnisoParams) -> Result<(Vec<CaseRecord>, Summary), CliError> {
    let n = a.p.n() as f64;
    let label = format!("profile a={} b={} in p={}", a.profile.a, a.profile.b, a.p);
    let inputs = json!({"profile": a.profile, "p": a.p, "plain": a.plain, "half_widths": a.half_widths});
    let rec = CaseRecord::new(0, label, inputs, InputDigest::new());
    let curve = match growth_curve(&a.profile, &a.p, a.plain, &a.half_widths, a.spacing) {
        Ok(c) => c,
        Err(e) => return Ok((vec![rec.failed(e.to_string())], Summary::default())),
    };
    // Each factor of the product grows like L^{dim/plain - rate} when that is positive.
    let plain_growth =
        (1.0 / a.plain - a.profile.a).max(0.0) + ((n - 1.0) / a.plain - a.profile.b).max(0.0);
    let mut rec = rec
        .check(Check::new("mixed_last_slope", curve.mixed_last_slope, Relation::AtMost, a.mixed_slope_bound, 0.0))
        .check(Check::new(
            "plain_last_slope",
            curve.plain_last_slope,
            Relation::AtLeast,
            a.plain_slope_share * plain_growth,
            0.0,
        ))
        .value("plain_growth_exponent", plain_growth)
        .value("mixed_exponent_sum", a.p.criticality_sum());
    for pt in &curve.points {
        rec = rec
            .value(&format!("mixed_L={}", pt.half_width), pt.mixed)
            .value(&format!("plain_L={}", pt.half_width), pt.plain);
    }
    let summary = Summary {
        fitted_slopes: vec![curve.mixed_last_slope, curve.plain_last_slope],
        ..Summary::default()
    };
    Ok((vec![rec.finish()], summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_young_triples_satisfy_the_identity() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..200 {
            let (p, q, r) = young_exponents(3, &mut rng);
            mnns_core::conv::check_young_exponents(&p, &q, &r).unwrap();
        }
    }

    #[test]
    fn random_decay_pairs_are_ordered() {
        let mut rng = SplitMix64::new(8);
        for _ in 0..200 {
            let (p, q) = decay_pair(3, &mut rng);
            for k in 0..3 {
                assert!(q.get(k).reciprocal() >= p.get(k).reciprocal() + 0.1 || !p.get(k).is_finite());
            }
        }
    }
}
