//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! `ACCEPTANCE_ONLY=2,9` restricts the run to the listed criteria.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use mnns_core::conv::young_ratio;
use mnns_core::flows::{gaussian_bump, random_band_limited, random_divergence_free, taylor_green_2d, taylor_green_3d};
use mnns_core::heat::profiles::{critical_datum, CriticalScales};
use mnns_core::heat::{continuity_at_zero, measure_decay, predicted_slope};
use mnns_core::mild::{
    bilinear_probe, local_solve, picard_solve, timestep_oracle, BilinearProbeSpec,
    PicardOptions, PicardOutcome, SolverConfig, Trajectory,
};
use mnns_core::norm::{mixed_norm, scaling_ratio_analytic};
use mnns_core::rng::SplitMix64;
use mnns_core::spectral::{leray_project, pressure_from_velocity, riesz_transform, spectral_divergence};
use mnns_core::{Boundary, Exponent, MixedExponents, Result, ScalarField, TensorGrid, VectorField};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn exps(values: &[f64]) -> MixedExponents {
    MixedExponents::from_f64s(values).expect("valid exponents")
}

// ---------------------------------------------------------------- 1. Young

/// Sum of two anisotropic Gaussians or a random-valued box, both well inside
/// the grid so that the convolution stays tail-light.
fn young_field(grid: &TensorGrid, rng: &mut SplitMix64) -> Result<ScalarField> {
    let n = grid.n();
    let l = grid.half_width(0);
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

fn young_exponents(n: usize, rng: &mut SplitMix64) -> (MixedExponents, MixedExponents, MixedExponents) {
    let mut p = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    let mut r = Vec::with_capacity(n);
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

fn criterion_young() -> Result<Outcome> {
    let grids = [
        TensorGrid::cube(1, 16.0, 512, Boundary::Truncated)?,
        TensorGrid::cube(2, 16.0, 64, Boundary::Truncated)?,
        TensorGrid::cube(3, 16.0, 24, Boundary::Truncated)?,
    ];
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (gi, grid) in grids.iter().enumerate() {
        let mut rng = SplitMix64::new(1000 + gi as u64);
        for _ in 0..100 {
            let f = young_field(grid, &mut rng)?;
            let g = young_field(grid, &mut rng)?;
            let (p, q, r) = young_exponents(grid.n(), &mut rng);
            worst = worst.max(young_ratio(&f, &g, &p, &q, &r)?);
            cases += 1;
        }
    }
    Ok(outcome(
        worst <= 1.0 + 5e-3,
        format!("{cases} cases, max ratio {worst:.6} (bound 1.005)"),
    ))
}

// ---------------------------------------------------------- 2. heat decay

fn decay_pair(n: usize, rng: &mut SplitMix64) -> (MixedExponents, MixedExponents) {
    let mut p = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
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

fn criterion_decay() -> Result<Outcome> {
    let scales = CriticalScales {
        core: 4.0,
        cut: 24000.0,
        width: 500.0,
    };
    let times: Vec<f64> = (0..6).map(|i| 800.0 * 8f64.powf(i as f64 / 5.0)).collect();
    let mut rng = SplitMix64::new(2024);
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    let mut pairs = 0;
    for n in [2usize, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3] {
        let grid = TensorGrid::cube(n, 32768.0, 65536, Boundary::Truncated)?;
        let (p, q) = decay_pair(n, &mut rng);
        let u0 = critical_datum(&grid, &q, &p, scales)?;
        for grad in [false, true] {
            let fit = measure_decay(&u0, &p, &q, &times, grad)?;
            let err = (fit.fitted_slope - predicted_slope(&p, &q, grad)).abs();
            if err > worst {
                worst = err;
                worst_case = format!("q={q} p={p} gradient={grad}");
            }
        }
        pairs += 1;
    }
    Ok(outcome(
        worst <= 0.05,
        format!("{pairs} pairs x (value, gradient), max slope error {worst:.4} at {worst_case}"),
    ))
}

// ---------------------------------------------------------- 3. continuity

fn criterion_continuity() -> Result<Outcome> {
    let t = 2f64.powi(-10);
    let plane = TensorGrid::cube(2, 8.0, 512, Boundary::Truncated)?;
    let cube = TensorGrid::cube(3, 12.0, 48, Boundary::Periodic)?;
    let cases: Vec<(ScalarField, MixedExponents)> = vec![
        (gaussian_bump(&plane, &[1.0, 1.0])?, exps(&[2.0, 2.0])),
        (gaussian_bump(&plane, &[1.0, 2.0])?, exps(&[3.0, 1.5])),
        (gaussian_bump(&plane, &[2.0, 1.0])?, exps(&[1.0, 4.0])),
        (gaussian_bump(&cube, &[2.0, 2.0, 2.0])?, exps(&[2.0, 2.0, 2.0])),
        (gaussian_bump(&cube, &[1.5, 2.0, 3.0])?, exps(&[3.0, 2.0, 6.0])),
    ];
    let mut worst = 0.0f64;
    for (f, p) in cases {
        let unit = f.scale(1.0 / mixed_norm(&f, &p)?);
        let d = continuity_at_zero(&unit, &p, &[t])?;
        worst = worst.max(d[0]);
    }
    Ok(outcome(
        worst < 1e-3,
        format!("5 unit-norm Gaussian presets at t=2^-10, max distance {worst:.3e}"),
    ))
}

// -------------------------------------------------- 4. spectral identities

fn criterion_spectral() -> Result<Outcome> {
    let grids = [
        TensorGrid::new(vec![PI, 2.0], vec![32, 24], Boundary::Periodic)?,
        TensorGrid::cube(3, PI, 16, Boundary::Periodic)?,
    ];
    let mut rng = SplitMix64::new(4);
    let (mut idem, mut div, mut riesz) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..100 {
        let grid = &grids[i % 2];
        let n = grid.n();
        let band = if n == 2 { 5 } else { 3 };
        let v = VectorField::new(
            (0..n)
                .map(|_| random_band_limited(grid, band, &mut rng))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let pv = leray_project(&v)?;
        idem = idem.max(leray_project(&pv)?.max_abs_diff(&pv)?);
        div = div.max(spectral_divergence(&pv)?.max_abs());
        let f = v.component(0);
        let mut sum = ScalarField::zeros(grid);
        for j in 0..n {
            sum = sum.add(&riesz_transform(&riesz_transform(f, j)?, j)?)?;
        }
        let mean = f.mean();
        let expect = f.map(|x| mean - x)?;
        riesz = riesz.max(sum.max_abs_diff(&expect)?);
    }
    let worst = idem.max(div).max(riesz);
    Ok(outcome(
        worst <= 1e-10,
        format!("100 fields: |P²-P| {idem:.1e}, |div P| {div:.1e}, |ΣR²+Id-mean| {riesz:.1e}"),
    ))
}

// ---------------------------------------------------------- 5. scaling

fn criterion_scaling() -> Result<Outcome> {
    let plane = TensorGrid::cube(2, 16.0, 256, Boundary::Truncated)?;
    let cube = TensorGrid::cube(3, 16.0, 96, Boundary::Truncated)?;
    let f2 = |x: &[f64]| (1.0 + 0.3 * x[0] - 0.2 * x[1]) * (-(x[0] * x[0] / 2.0 + x[1] * x[1] / 3.0)).exp();
    let f3 = |x: &[f64]| {
        (1.0 + 0.25 * x[2]) * (-(x[0] * x[0] / 3.0 + x[1] * x[1] / 2.0 + x[2] * x[2] / 4.0)).exp()
    };
    let exps2: Vec<MixedExponents> = vec![
        exps(&[2.0, 2.0]),
        exps(&[3.0, 1.5]),
        exps(&[1.25, 5.0]),
        MixedExponents::new(vec![Exponent::Infinite, Exponent::Finite(1.0)]).expect("valid"),
        exps(&[3.0, 3.0]),
        exps(&[1.0, 1.0]),
        exps(&[1.5, 4.0]),
    ];
    let exps3: Vec<MixedExponents> = vec![
        exps(&[3.0, 3.0, 3.0]),
        exps(&[8.0, 16.0 / 7.0, 16.0 / 7.0]),
        exps(&[2.0, 4.0, 4.0]),
        exps(&[6.0, 6.0, 6.0]),
        exps(&[1.0, 2.0, 4.0]),
    ];
    let mut worst = 0.0f64;
    let mut count = 0;
    for lambda in [0.5, 2.0] {
        for (grid, list, f) in [
            (&plane, &exps2, &f2 as &(dyn Fn(&[f64]) -> f64 + Sync)),
            (&cube, &exps3, &f3),
        ] {
            for p in list.iter() {
                let measured = scaling_ratio_analytic(grid, f, lambda, p)?;
                let predicted = lambda.powf(1.0 - p.criticality_sum());
                worst = worst.max((measured - predicted).abs());
                count += 1;
            }
        }
    }
    Ok(outcome(
        worst <= 1e-3,
        format!("{count} (λ, p) cases, max |ratio - λ^(1-Σ1/p)| {worst:.2e}"),
    ))
}

// ------------------------------------------------------- 6-8. mild solver

/// Time-node and quadrature settings used by the solver criteria.
fn solver_config(p: &[f64], q: &[f64], horizon: f64) -> Result<SolverConfig> {
    let mut cfg = SolverConfig::new(exps(p), exps(q), horizon)?;
    cfg.time_nodes = 16;
    cfg.quad_nodes = 12;
    Ok(cfg)
}

fn solver_grid(m: usize) -> Result<TensorGrid> {
    TensorGrid::cube(3, PI, m, Boundary::Periodic)
}

fn relative_l2(a: &VectorField, b: &VectorField) -> Result<f64> {
    Ok(a.sub(b)?.l2_norm() / b.l2_norm())
}

struct SmallRun {
    cfg: SolverConfig,
    outcome: PicardOutcome,
}

fn small_data_run() -> Result<SmallRun> {
    let grid = solver_grid(32)?;
    let a0 = taylor_green_3d(&grid)?;
    let cfg = solver_config(&[3.0; 3], &[6.0; 3], 1.0)?;
    let outcome = picard_solve(&a0, &cfg)?;
    Ok(SmallRun { cfg, outcome })
}

fn criterion_mild(run: &SmallRun) -> Result<Outcome> {
    let o = &run.outcome;
    let oracle = timestep_oracle(o.trajectory.initial(), o.trajectory.times(), 200)?;
    let mut worst = 0.0f64;
    for (u, v) in o.trajectory.states().iter().zip(oracle.states()) {
        worst = worst.max(relative_l2(u, v)?);
    }
    let residual = o.residual.unwrap_or(f64::INFINITY);
    let pass = o.certificate.product <= 0.5
        && o.converged
        && o.iterations <= 10
        && worst <= 1e-3
        && residual <= 2.0 * run.cfg.picard_tol;
    Ok(outcome(
        pass,
        format!(
            "32³ Taylor-Green, product {:.3}, {} iterations, oracle rel L2 {worst:.2e}, residual {residual:.1e}",
            o.certificate.product, o.iterations
        ),
    ))
}

fn criterion_smallness(run: &SmallRun) -> Result<Outcome> {
    let mut runs: Vec<(String, f64, f64, bool)> = Vec::new();
    let o = &run.outcome;
    runs.push(("32³ TG".into(), o.solution_x_norm, o.certificate.u0_x_norm, o.converged));
    let grid = solver_grid(16)?;
    let mut rng = SplitMix64::new(7);
    let a0 = random_divergence_free(&grid, 2, &mut rng)?;
    let cfg = solver_config(&[3.0, 4.0, 2.4], &[6.0, 8.0, 4.8], 1.0)?;
    let a0 = a0.scale(0.5 / a0.max_abs());
    let o = picard_solve(&a0, &cfg)?;
    runs.push((
        "16³ random, p=(3,4,2.4)".into(),
        o.solution_x_norm,
        o.certificate.u0_x_norm,
        o.converged,
    ));
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, u, u0, converged) in runs {
        pass &= converged && u <= 2.0 * u0 + 1e-6;
        parts.push(format!("{name}: |u|_X {u:.4} vs 2|u0|_X {:.4}", 2.0 * u0));
    }
    Ok(outcome(pass, parts.join("; ")))
}

fn criterion_local() -> Result<Outcome> {
    let grid = solver_grid(32)?;
    let a0 = taylor_green_3d(&grid)?.scale(50.0);
    let cfg = solver_config(&[3.0; 3], &[6.0; 3], 1.0)?;
    let local = local_solve(&a0, &cfg, &PicardOptions::default())?;
    let o = &local.outcome;
    let residual = o.residual.unwrap_or(f64::INFINITY);
    let pass = local.t0 > 0.0 && o.converged && residual <= 2.0 * cfg.picard_tol;
    Ok(outcome(
        pass,
        format!(
            "x50 data: T0 {:.3e} after {} halvings, {} iterations, residual {residual:.1e}",
            local.t0, local.halvings, o.iterations
        ),
    ))
}

// ------------------------------------------------------ 9. bilinear probes

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/bilinear_probe.json")
}

/// Heat-flow trajectories paired with the probe specification.
pub fn probe_suite() -> Result<Vec<(String, Trajectory, Trajectory, BilinearProbeSpec)>> {
    let mut out = Vec::new();
    let times: Vec<f64> = (0..12).map(|i| 1e-3 * 1e3f64.powf(i as f64 / 11.0)).collect();
    let probe_times = vec![0.1, 0.25, 0.5, 1.0];

    let plane = TensorGrid::cube(2, PI, 32, Boundary::Periodic)?;
    let bump = |w: &[f64]| -> Result<VectorField> {
        let g = gaussian_bump(&plane, w)?;
        leray_project(&VectorField::new(vec![g.clone(), g.map(|v| 0.5 * v)?])?)
    };
    let u = Trajectory::heat_flow(&bump(&[0.3, 0.5])?, times.clone())?;
    let v = Trajectory::heat_flow(&bump(&[0.6, 0.2])?, times.clone())?;
    let tg = Trajectory::heat_flow(&taylor_green_2d(&plane)?, times.clone())?;
    for p in [[3.0, 3.0], [4.0, 2.5]] {
        let spec = BilinearProbeSpec {
            p: exps(&p),
            alpha: vec![1.0, 1.0],
            beta: vec![1.0, 1.0],
            gamma: vec![1.0, 1.0],
            times: probe_times.clone(),
            quad_nodes: 16,
            delta: 0.5,
        };
        out.push((format!("2D bumps p={p:?}"), u.clone(), v.clone(), spec.clone()));
        out.push((format!("2D bump/TG p={p:?}"), u.clone(), tg.clone(), spec));
    }

    let cube = TensorGrid::cube(3, PI, 16, Boundary::Periodic)?;
    let mut rng = SplitMix64::new(9);
    let r1 = Trajectory::heat_flow(&random_divergence_free(&cube, 2, &mut rng)?, times.clone())?;
    let r2 = Trajectory::heat_flow(&random_divergence_free(&cube, 2, &mut rng)?, times.clone())?;
    let tg3 = Trajectory::heat_flow(&taylor_green_3d(&cube)?, times)?;
    let x_instance = BilinearProbeSpec {
        p: exps(&[3.0; 3]),
        alpha: vec![0.5; 3],
        beta: vec![1.0; 3],
        gamma: vec![0.5; 3],
        times: probe_times.clone(),
        quad_nodes: 16,
        delta: 0.5,
    };
    let aniso = BilinearProbeSpec {
        p: exps(&[3.0, 4.0, 2.4]),
        alpha: vec![0.5, 0.5, 0.5],
        beta: vec![1.0, 1.0, 1.0],
        gamma: vec![0.5, 0.5, 0.5],
        times: probe_times,
        quad_nodes: 16,
        delta: 0.5,
    };
    out.push(("3D random X-instance".into(), r1.clone(), r2.clone(), x_instance.clone()));
    out.push(("3D TG/random X-instance".into(), tg3.clone(), r1.clone(), x_instance));
    out.push(("3D random anisotropic".into(), r2, tg3, aniso));
    Ok(out)
}

fn criterion_bilinear() -> Result<Outcome> {
    let mut measured = 0.0f64;
    let mut rows = Vec::new();
    for (name, u, v, spec) in probe_suite()? {
        let report = bilinear_probe(&u, &v, &spec)?;
        measured = measured.max(report.max_ratio);
        rows.push(serde_json::json!({"case": name, "max_ratio": report.max_ratio}));
    }
    let path = golden_path();
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(_) => {
            return Ok(outcome(
                false,
                format!(
                    "golden file missing; measured max {measured:.6}, cases {}",
                    serde_json::Value::Array(rows)
                ),
            ))
        }
    };
    let golden: serde_json::Value = serde_json::from_str(&text).expect("golden JSON");
    let budget = golden["budget"].as_f64().expect("budget");
    let recorded = golden["measured_max"].as_f64().expect("measured_max");
    let drift = (measured - recorded).abs() / recorded;
    Ok(outcome(
        measured <= budget && budget <= 5.0 && drift <= 1e-6,
        format!("max ratio {measured:.6} (recorded {recorded:.6}, budget {budget})"),
    ))
}

// ------------------------------------------------------------ 10. pressure

/// Pressure from a naive DFT of `-Δ P = Σ ∂_i ∂_j (u_i u_j)` with integer
/// wavenumbers on the `2π` box.
fn naive_poisson_pressure(u: &VectorField) -> ScalarField {
    let grid = u.grid();
    let n = grid.n();
    let len = grid.len();
    let mut x = vec![0.0; n];
    let points: Vec<Vec<f64>> = (0..len)
        .map(|i| {
            grid.point(i, &mut x);
            x.clone()
        })
        .collect();
    let m = grid.count(0) as i64;
    let mut idx = vec![0usize; n];
    let modes: Vec<Vec<f64>> = (0..len)
        .map(|i| {
            grid.multi_index(i, &mut idx);
            idx.iter()
                .map(|&k| {
                    let k = k as i64;
                    (if k < m / 2 { k } else { k - m }) as f64
                })
                .collect()
        })
        .collect();
    let mut hat = vec![(0.0f64, 0.0f64); len];
    for (mi, kappa) in modes.iter().enumerate() {
        let k2: f64 = kappa.iter().map(|k| k * k).sum();
        if k2 == 0.0 || kappa.iter().any(|k| k.abs() as i64 == m / 2) {
            continue;
        }
        let (mut re, mut im) = (0.0, 0.0);
        for (xi, pt) in points.iter().enumerate() {
            let phase: f64 = kappa.iter().zip(pt).map(|(k, x)| k * x).sum();
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += kappa[i] * kappa[j] * u.component(i).data()[xi] * u.component(j).data()[xi];
                }
            }
            re += s * phase.cos();
            im -= s * phase.sin();
        }
        hat[mi] = (-re / k2 / len as f64, -im / k2 / len as f64);
    }
    let data = points
        .iter()
        .map(|pt| {
            modes
                .iter()
                .zip(&hat)
                .map(|(kappa, (re, im))| {
                    let phase: f64 = kappa.iter().zip(pt).map(|(k, x)| k * x).sum();
                    re * phase.cos() - im * phase.sin()
                })
                .sum()
        })
        .collect();
    ScalarField::new(grid.clone(), data).expect("finite pressure")
}

fn criterion_pressure() -> Result<Outcome> {
    let grid = TensorGrid::cube(2, PI, 16, Boundary::Periodic)?;
    let u = taylor_green_2d(&grid)?;
    let p = pressure_from_velocity(&u)?;
    let closed = ScalarField::from_fn(&grid, |x| 0.25 * ((2.0 * x[0]).cos() + (2.0 * x[1]).cos()))?;
    let closed_err = p.max_abs_diff(&closed)?;
    let mut poisson_err = p.max_abs_diff(&naive_poisson_pressure(&u))?;
    let mut rng = SplitMix64::new(10);
    for _ in 0..3 {
        let v = random_divergence_free(&grid, 3, &mut rng)?;
        poisson_err = poisson_err.max(pressure_from_velocity(&v)?.max_abs_diff(&naive_poisson_pressure(&v))?);
    }
    Ok(outcome(
        closed_err <= 1e-8 && poisson_err <= 1e-8,
        format!("closed form {closed_err:.1e}, naive Poisson solve {poisson_err:.1e}"),
    ))
}

// ------------------------------------------------------------------ driver

fn main() -> ExitCode {
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let wanted = |k: usize| only.as_ref().map_or(true, |v| v.contains(&k));
    let mut failures = 0;
    let mut report = |k: usize, name: &str, start: Instant, res: Result<Outcome>| {
        let (status, detail) = match res {
            Ok(o) => (if o.pass { "PASS" } else { "FAIL" }, o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {k:>2} {name:<22} {status}  {detail} [{:.1}s]",
            start.elapsed().as_secs_f64()
        );
    };

    let simple: [(usize, &str, fn() -> Result<Outcome>); 6] = [
        (1, "young", criterion_young),
        (2, "heat-decay", criterion_decay),
        (3, "continuity", criterion_continuity),
        (4, "spectral-identities", criterion_spectral),
        (5, "scaling", criterion_scaling),
        (10, "pressure", criterion_pressure),
    ];
    for (k, name, f) in simple.iter().take(5) {
        if wanted(*k) {
            let start = Instant::now();
            report(*k, name, start, f());
        }
    }
    if wanted(6) || wanted(7) {
        let start = Instant::now();
        match small_data_run() {
            Ok(run) => {
                if wanted(6) {
                    report(6, "mild-vs-oracle", start, criterion_mild(&run));
                }
                if wanted(7) {
                    let start = Instant::now();
                    report(7, "smallness-bound", start, criterion_smallness(&run));
                }
            }
            Err(e) => {
                for (k, name) in [(6, "mild-vs-oracle"), (7, "smallness-bound")] {
                    if wanted(k) {
                        report(k, name, start, Err(e.clone()));
                    }
                }
            }
        }
    }
    if wanted(8) {
        let start = Instant::now();
        report(8, "local-branch", start, criterion_local());
    }
    if wanted(9) {
        let start = Instant::now();
        report(9, "bilinear-probes", start, criterion_bilinear());
    }
    let (k, name, f) = simple[5];
    if wanted(k) {
        let start = Instant::now();
        report(k, name, start, f());
    }
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
