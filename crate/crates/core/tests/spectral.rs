use std::f64::consts::PI;

use mnns_core::flows::{
    abc_flow, random_band_limited, random_divergence_free, taylor_green_2d, taylor_green_2d_rotated,
    taylor_green_3d,
};
use mnns_core::rng::SplitMix64;
use mnns_core::spectral::{
    leray_boundedness_probe, leray_project, periodic_heat, pressure_from_velocity, riesz_boundedness_probe,
    riesz_transform, spectral_derivative, spectral_divergence, spectral_gradient, SpectralField,
};
use mnns_core::{Boundary, Error, MixedExponents, ScalarField, TensorGrid, VectorField};
use proptest::prelude::*;

fn torus(n: usize, m: usize) -> TensorGrid {
    TensorGrid::cube(n, PI, m, Boundary::Periodic).unwrap()
}

fn exps(v: &[f64]) -> MixedExponents {
    MixedExponents::from_f64s(v).unwrap()
}

#[test]
fn riesz_of_a_cosine_is_a_sine() {
    let g = torus(2, 16);
    let f = ScalarField::from_fn(&g, |x| (2.0 * x[1]).cos()).unwrap();
    let r = riesz_transform(&f, 1).unwrap();
    let want = ScalarField::from_fn(&g, |x| (2.0 * x[1]).sin()).unwrap();
    assert!(r.max_abs_diff(&want).unwrap() < 1e-13);
    assert!(riesz_transform(&f, 0).unwrap().max_abs() < 1e-13);
    assert!(riesz_transform(&ScalarField::constant(&g, 3.0), 0).unwrap().max_abs() < 1e-13);
}

#[test]
fn squares_of_riesz_transforms_sum_to_minus_the_identity() {
    let g = torus(3, 12);
    let f = random_band_limited(&g, 3, &mut SplitMix64::new(5)).unwrap();
    let mut acc = ScalarField::zeros(&g);
    for j in 0..3 {
        acc = acc.add(&riesz_transform(&riesz_transform(&f, j).unwrap(), j).unwrap()).unwrap();
    }
    let centered = f.map(|v| v - f.mean()).unwrap();
    assert!(acc.add(&centered).unwrap().max_abs() < 1e-12);
}

#[test]
fn riesz_transforms_are_skew_adjoint() {
    let g = torus(2, 32);
    let mut rng = SplitMix64::new(11);
    let f = random_band_limited(&g, 5, &mut rng).unwrap();
    let h = random_band_limited(&g, 5, &mut rng).unwrap();
    for j in 0..2 {
        let a = riesz_transform(&f, j).unwrap().inner(&h).unwrap();
        let b = f.inner(&riesz_transform(&h, j).unwrap()).unwrap();
        assert!((a + b).abs() < 1e-11 * a.abs().max(1.0));
    }
}

#[test]
fn derivatives_and_gradients() {
    let g = torus(2, 24);
    let f = ScalarField::from_fn(&g, |x| (3.0 * x[0]).sin() * x[1].cos()).unwrap();
    let d = spectral_derivative(&f, 0).unwrap();
    let want = ScalarField::from_fn(&g, |x| 3.0 * (3.0 * x[0]).cos() * x[1].cos()).unwrap();
    assert!(d.max_abs_diff(&want).unwrap() < 1e-12);

    let u = taylor_green_2d(&g).unwrap();
    let grad = spectral_gradient(&u).unwrap();
    let trace = grad.get(0, 0).add(grad.get(1, 1)).unwrap();
    assert!(trace.max_abs_diff(&spectral_divergence(&u).unwrap()).unwrap() < 1e-13);
    let want01 = ScalarField::from_fn(&g, |x| -x[0].sin() * x[1].sin()).unwrap();
    assert!(grad.get(0, 1).max_abs_diff(&want01).unwrap() < 1e-13);
}

#[test]
fn leray_projection_identities() {
    let g = torus(3, 12);
    let mut rng = SplitMix64::new(3);
    let v = VectorField::new((0..3).map(|_| random_band_limited(&g, 3, &mut rng).unwrap()).collect()).unwrap();
    let pv = leray_project(&v).unwrap();
    assert!(spectral_divergence(&pv).unwrap().max_abs() < 1e-12);
    assert!(leray_project(&pv).unwrap().max_abs_diff(&pv).unwrap() < 1e-12);

    // Gradients are annihilated.
    let phi = random_band_limited(&g, 3, &mut rng).unwrap();
    let grad = VectorField::new((0..3).map(|j| spectral_derivative(&phi, j).unwrap()).collect()).unwrap();
    assert!(leray_project(&grad).unwrap().max_abs() < 1e-11);

    for u in [taylor_green_3d(&g).unwrap(), abc_flow(&g).unwrap()] {
        assert!(leray_project(&u).unwrap().max_abs_diff(&u).unwrap() < 1e-13);
    }
    let w = random_divergence_free(&g, 2, &mut rng).unwrap();
    assert!(spectral_divergence(&w).unwrap().max_abs() < 1e-12);
}

#[test]
fn taylor_green_pressure_in_both_orientations() {
    let g = torus(2, 32);
    let expected = |sign: f64| {
        ScalarField::from_fn(&g, move |x| sign * 0.25 * ((2.0 * x[0]).cos() + (2.0 * x[1]).cos())).unwrap()
    };
    let p = pressure_from_velocity(&taylor_green_2d(&g).unwrap()).unwrap();
    assert!(p.max_abs_diff(&expected(1.0)).unwrap() < 1e-13);
    let p = pressure_from_velocity(&taylor_green_2d_rotated(&g).unwrap()).unwrap();
    assert!(p.max_abs_diff(&expected(-1.0)).unwrap() < 1e-13);
}

#[test]
fn periodic_heat_damps_each_mode() {
    let g = torus(2, 16);
    let f = ScalarField::from_fn(&g, |x| x[0].sin() + (2.0 * x[1]).cos() + 0.5).unwrap();
    let t = 0.3;
    let u = periodic_heat(&f, t, None).unwrap();
    let want = ScalarField::from_fn(&g, |x| {
        (-t).exp() * x[0].sin() + (-4.0 * t).exp() * (2.0 * x[1]).cos() + 0.5
    })
    .unwrap();
    assert!(u.max_abs_diff(&want).unwrap() < 1e-13);
    let d = periodic_heat(&f, t, Some(1)).unwrap();
    let want = ScalarField::from_fn(&g, |x| -2.0 * (-4.0 * t).exp() * (2.0 * x[1]).sin()).unwrap();
    assert!(d.max_abs_diff(&want).unwrap() < 1e-13);
    assert!(periodic_heat(&f, t, Some(2)).is_err());
}

#[test]
fn spectral_round_trip_is_real() {
    let g = torus(2, 16);
    let v = random_divergence_free(&g, 3, &mut SplitMix64::new(9)).unwrap();
    let s = SpectralField::from_vector(&v).unwrap();
    assert!(s.conjugate_asymmetry() < 1e-12);
    assert!(s.to_vector().unwrap().max_abs_diff(&v).unwrap() < 1e-13);
    assert!(s.imaginary_residue() < 1e-13);
}

#[test]
fn boundedness_probes() {
    let g = torus(2, 32);
    let mut rng = SplitMix64::new(21);
    let fields: Vec<ScalarField> = (0..4).map(|_| random_band_limited(&g, 6, &mut rng).unwrap()).collect();
    // On L₂ the multipliers have modulus at most one.
    assert!(riesz_boundedness_probe(&fields, &exps(&[2.0, 2.0])).unwrap() <= 1.0 + 1e-12);
    let r = riesz_boundedness_probe(&fields, &exps(&[3.0, 1.5])).unwrap();
    assert!(r.is_finite() && r > 0.0 && r < 10.0);

    let vecs: Vec<VectorField> = (0..3)
        .map(|_| VectorField::new((0..2).map(|_| random_band_limited(&g, 4, &mut rng).unwrap()).collect()).unwrap())
        .collect();
    let l = leray_boundedness_probe(&vecs, &exps(&[4.0, 2.5])).unwrap();
    assert!(l.is_finite() && l > 0.0 && l < 10.0);

    assert!(matches!(
        riesz_boundedness_probe(&fields, &exps(&[1.0, 2.0])),
        Err(Error::InvalidExponent { axis: 0, .. })
    ));
    assert!(matches!(
        leray_boundedness_probe(&vecs, &exps(&[2.0, f64::INFINITY])),
        Err(Error::InvalidExponent { axis: 1, .. })
    ));
    assert_eq!(riesz_boundedness_probe(&[ScalarField::zeros(&g)], &exps(&[2.0, 2.0])).unwrap(), 0.0);
}

#[test]
fn truncated_grids_are_refused() {
    let g = TensorGrid::cube(2, 4.0, 16, Boundary::Truncated).unwrap();
    let f = ScalarField::zeros(&g);
    let v = VectorField::zeros(&g, 2);
    assert_eq!(riesz_transform(&f, 0), Err(Error::NotPeriodic));
    assert_eq!(spectral_derivative(&f, 1), Err(Error::NotPeriodic));
    assert_eq!(periodic_heat(&f, 1.0, None), Err(Error::NotPeriodic));
    assert_eq!(leray_project(&v), Err(Error::NotPeriodic));
    assert_eq!(spectral_divergence(&v), Err(Error::NotPeriodic));
    assert_eq!(pressure_from_velocity(&v), Err(Error::NotPeriodic));
    assert!(matches!(spectral_gradient(&v), Err(Error::NotPeriodic)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leray_is_idempotent_and_divergence_free(seed in any::<u64>(), band in 1usize..4) {
        let g = torus(2, 16);
        let mut rng = SplitMix64::new(seed);
        let v = VectorField::new((0..2).map(|_| random_band_limited(&g, band, &mut rng).unwrap()).collect()).unwrap();
        let pv = leray_project(&v).unwrap();
        prop_assert!(spectral_divergence(&pv).unwrap().max_abs() < 1e-11);
        prop_assert!(leray_project(&pv).unwrap().max_abs_diff(&pv).unwrap() < 1e-11);
        // ℙ is an orthogonal projection: ‖ℙv‖₂ ≤ ‖v‖₂.
        prop_assert!(pv.l2_norm() <= v.l2_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn riesz_commutes_with_heat(seed in any::<u64>(), t in 0.01f64..1.0, j in 0usize..2) {
        let g = torus(2, 16);
        let f = random_band_limited(&g, 4, &mut SplitMix64::new(seed)).unwrap();
        let a = riesz_transform(&periodic_heat(&f, t, None).unwrap(), j).unwrap();
        let b = periodic_heat(&riesz_transform(&f, j).unwrap(), t, None).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }
}
