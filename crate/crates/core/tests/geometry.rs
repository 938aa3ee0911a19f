use std::f64::consts::PI;

use isoflow::geometry::*;
use isoflow::spheroid::spheroid_profile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// Closed-form values cross-checked by adaptive quadrature at 25 digits.
const AREA_05: f64 = 5.369608831970934;
const VOLUME_05: f64 = 1.0471975511965976;
const WILLMORE_05: f64 = 15.451606644326558;

#[test]
fn unit_sphere_profile_nodes() {
    let c = sphere_profile(1.0, 256).unwrap();
    for ((t, r), z) in c.params().iter().zip(c.radial()).zip(c.height()) {
        assert!((r - t.cos()).abs() < 1e-15);
        assert!((z - t.sin()).abs() < 1e-15);
    }
    let s = compute_geometry(&c).unwrap();
    assert!((s.ratio - 1.0).abs() < 1e-8);
    assert!(s.h.iter().all(|h| (h - 2.0).abs() < 1e-6));
    assert!(s.a0_sq.iter().all(|a| *a < 1e-12));
    assert!((s.willmore - 4.0 * PI).abs() < 1e-7);
    assert!((s.volume - 4.0 * PI / 3.0).abs() < 1e-8);
}

#[test]
fn sphere_of_radius_two_scales() {
    let s = compute_geometry(&sphere_profile(2.0, 256).unwrap()).unwrap();
    assert!(rel(s.area, 16.0 * PI) < 1e-8);
    assert!(rel(s.volume, 32.0 * PI / 3.0) < 1e-8);
    assert!((s.ratio - 1.0).abs() < 1e-8);
    // W is scale invariant.
    assert!((s.willmore - 4.0 * PI).abs() < 1e-7);
}

#[test]
fn sphere_profile_rejects_bad_input() {
    assert_eq!(sphere_profile(0.0, 64).unwrap_err(), GeometryError::NonPositiveRadius(0.0));
    assert_eq!(sphere_profile(1.0, 8).unwrap_err(), GeometryError::TooFewNodes(8));
}

#[test]
fn half_spheroid_volume_and_willmore() {
    let s = compute_geometry(&spheroid_profile(0.5, 1024).unwrap()).unwrap();
    assert!((s.volume - PI / 3.0).abs() < 1e-8);
    assert!(rel(s.volume, VOLUME_05) < 1e-8);
    assert!(rel(s.area, AREA_05) < 1e-8);
    let s = compute_geometry(&spheroid_profile(0.5, 2048).unwrap()).unwrap();
    assert!(rel(s.willmore, WILLMORE_05) < 1e-6);
}

#[test]
fn state_invariants_hold_on_a_wobbly_profile() {
    let c = ProfileCurve::from_fn(300, |t| {
        let th = t + PI / 2.0;
        (0.7 * t.cos() * (1.0 + 0.1 * (2.0 * th).cos()), t.sin() + 0.05 * (3.0 * th).cos())
    })
    .unwrap();
    let s = compute_geometry(&c).unwrap();
    for nu in &s.normal {
        assert!((nu[0].hypot(nu[1]) - 1.0).abs() < 1e-12);
    }
    assert!(s.a0_sq.iter().all(|a| *a >= 0.0));
    assert!(s.ratio > 0.0 && s.ratio <= 1.0 + 1e-9);
    assert!(s.willmore >= 4.0 * PI - 1e-9);
}

#[test]
fn second_fundamental_form_splits() {
    let c = spheroid_profile(0.3, 200).unwrap();
    let s = compute_geometry(&c).unwrap();
    let direct = s.second_fundamental_sq();
    for (i, d) in direct.iter().enumerate() {
        let split = s.a0_sq[i] + 0.5 * s.h[i] * s.h[i];
        assert!(rel(split, *d) < 1e-10, "node {i}");
    }
}

#[test]
fn gauss_bonnet_gap_shrinks() {
    let gap = |n: usize| {
        let s = compute_geometry(&spheroid_profile(0.4, n).unwrap()).unwrap();
        (s.umbilic - (2.0 * s.willmore - 8.0 * PI)).abs()
    };
    let (g64, g128, g256) = (gap(64), gap(128), gap(256));
    assert!(g128 <= 0.5 * g64 && g256 <= 0.5 * g128, "{g64:e} {g128:e} {g256:e}");
    assert!(g256 < 1e-6);
}

#[test]
fn spheroid_quadrature_converges() {
    let err = |n: usize| {
        let s = compute_geometry(&spheroid_profile(0.5, n).unwrap()).unwrap();
        (rel(s.area, AREA_05), rel(s.volume, VOLUME_05))
    };
    let (a1, v1) = err(64);
    let (a2, v2) = err(128);
    assert!(a1 / a2 >= 3.5 && v1 / v2 >= 3.5, "{a1:e} {a2:e} {v1:e} {v2:e}");
}

#[test]
fn reparametrization_changes_little() {
    let n = 400;
    let uniform = compute_geometry(&spheroid_profile(0.6, n).unwrap()).unwrap();
    // Monotone warp fixing both poles, odd about the equator.
    let params: Vec<f64> = staggered_params(n).iter().map(|t| t + 0.15 * (2.0 * t).sin()).collect();
    let r = params.iter().map(|t| 0.6 * t.cos()).collect();
    let z = params.iter().map(|t| t.sin()).collect();
    let warped = compute_geometry(&ProfileCurve::new(params, r, z).unwrap()).unwrap();
    assert!(rel(warped.area, uniform.area) < 1e-5);
    assert!(rel(warped.volume, uniform.volume) < 1e-5);
    assert!(rel(warped.willmore, uniform.willmore) < 1e-4);
    assert!((warped.umbilic - uniform.umbilic).abs() < 1e-3 * uniform.willmore);
    assert!(rel(warped.ratio, uniform.ratio) < 1e-5);
}

#[test]
fn laplacian_of_constant_vanishes() {
    for c in [spheroid_profile(0.6, 128).unwrap(), sphere_profile(1.0, 200).unwrap()] {
        let out = laplace_beltrami(&c, &vec![3.0; c.len()]).unwrap();
        assert!(out.iter().all(|v| v.abs() < 1e-10));
    }
}

#[test]
fn laplacian_of_height_on_sphere() {
    let err = |n: usize| {
        let c = sphere_profile(1.0, n).unwrap();
        let lap = laplace_beltrami(&c, c.height()).unwrap();
        lap.iter().zip(c.height()).map(|(l, z)| (l + 2.0 * z).abs()).fold(0.0, f64::max)
    };
    let (e128, e256) = (err(128), err(256));
    assert!(e256 < 1e-4);
    assert!(e128 / e256 > 3.5);
}

#[test]
fn laplacian_is_self_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for c in [spheroid_profile(0.6, 256).unwrap(), {
        // Nonuniform grid uses the other discretization.
        let p: Vec<f64> = staggered_params(256).iter().map(|t| t + 0.1 * (2.0 * t).sin()).collect();
        let r = p.iter().map(|t| 0.6 * t.cos()).collect();
        let z = p.iter().map(|t| t.sin()).collect();
        ProfileCurve::new(p, r, z).unwrap()
    }] {
        let s = compute_geometry(&c).unwrap();
        let u: Vec<f64> = (0..c.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..c.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let lu = s.laplacian().apply(&u).unwrap();
        let lv = s.laplacian().apply(&v).unwrap();
        let (a, b) = (s.inner(&u, &lv), s.inner(&v, &lu));
        assert!((a - b).abs() <= 1e-8 * a.abs().max(b.abs()), "{a} {b}");
    }
}

#[test]
fn laplacian_rejects_wrong_length() {
    let c = sphere_profile(1.0, 32).unwrap();
    assert!(matches!(laplace_beltrami(&c, &[1.0; 31]), Err(GeometryError::LengthMismatch { .. })));
}

#[test]
fn integration_by_parts_is_exact() {
    let s = compute_geometry(&spheroid_profile(0.35, 256).unwrap()).unwrap();
    let ibp = s.inner(&s.h, &s.lap_h) + s.integrate(&s.grad_h_sq);
    assert!(ibp.abs() < 1e-10 * s.integrate(&s.grad_h_sq));
    assert!(s.integrate(&s.lap_h).abs() < 1e-10 * s.l2_norm(&s.lap_h) * s.area.sqrt());
}

#[test]
fn concentration_on_unit_sphere() {
    let c = sphere_profile(1.0, 256).unwrap();
    let s = compute_geometry(&c).unwrap();
    assert!((curvature_concentration(&c, &s, 2.5) - 8.0 * PI).abs() < 1e-6);
    assert!(curvature_concentration(&c, &s, 1e-6) < 1e-6);
}

#[test]
fn concentration_large_radius_matches_gauss_bonnet() {
    let c = spheroid_profile(0.3, 512).unwrap();
    let s = compute_geometry(&c).unwrap();
    let kappa = curvature_concentration(&c, &s, 10.0);
    assert!(rel(kappa, 4.0 * s.willmore - 8.0 * PI) < 1e-6);
}

#[test]
fn concentration_grows_with_radius() {
    let c = spheroid_profile(0.3, 256).unwrap();
    let s = compute_geometry(&c).unwrap();
    let values: Vec<f64> = (1..=40).map(|k| curvature_concentration(&c, &s, 0.05 * k as f64)).collect();
    assert!(values.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn area_variation_along_position_is_twice_area() {
    let c = spheroid_profile(0.45, 256).unwrap();
    let s = compute_geometry(&c).unwrap();
    let pair = variation_check(&c, Functional::Area, &s.support).unwrap();
    assert!(rel(pair.analytic, 2.0 * s.area) < 1e-9);
    assert!(pair.relative_gap() < 1e-6);
}

#[test]
fn volume_variation_on_sphere() {
    let c = sphere_profile(1.0, 256).unwrap();
    let pair = variation_check(&c, Functional::Volume, &vec![1.0; c.len()]).unwrap();
    assert!((pair.analytic + 4.0 * PI).abs() < 1e-8);
    assert!((pair.finite_difference + 4.0 * PI).abs() < 1e-6);
}

#[test]
fn umbilic_variation_matches_finite_differences() {
    let c = spheroid_profile(0.6, 256).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let coef: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let dir = smooth_direction(&c, &coef);
        let pair = variation_check(&c, Functional::Umbilic, &dir).unwrap();
        assert!(pair.relative_gap() < 1e-5, "{pair:?}");
    }
}

#[test]
fn variation_rejects_wrong_length() {
    let c = sphere_profile(1.0, 32).unwrap();
    assert!(matches!(variation_check(&c, Functional::Area, &[0.0; 3]), Err(GeometryError::LengthMismatch { .. })));
}
