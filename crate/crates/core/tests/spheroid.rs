use std::f64::consts::PI;

use isoflow::geometry::{compute_geometry, sphere_profile};
use isoflow::spheroid::*;

fn p(a: f64) -> SpheroidParam {
    SpheroidParam::new(a).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `(a, A, V, W, I, F)` rounded from 30-digit values.
const TABLE: [(f64, f64, f64, f64, f64, f64); 4] = [
    (0.2, 2.007700407325473, 0.16755160819145565, 29.368821100450536, 0.39233120614087524, -5.082487449288705),
    (0.5, 5.369608831970934, 1.0471975511965976, 15.451606644326558, 0.8010906483749599, -0.4487614546156805),
    (0.6, 6.631722477458867, 1.5079644737231008, 14.153498104785257, 0.8817704945580356, -0.18677652269844994),
    (0.8, 9.412220879159918, 2.6808257310632904, 12.882500632161722, 0.9747948117779897, -0.01680214025057323),
];

#[test]
fn closed_forms_match_reference_values() {
    for (a, area, volume, willmore, ratio, f) in TABLE {
        assert!(rel(spheroid_area(p(a)), area) < 1e-14, "A at {a}");
        assert!(rel(spheroid_volume(p(a)), volume) < 1e-14, "V at {a}");
        assert!(rel(spheroid_willmore(p(a)), willmore) < 1e-14, "W at {a}");
        assert!(rel(spheroid_isoperimetric(p(a)), ratio) < 1e-14, "I at {a}");
        assert!(rel(gap_function(p(a)), f) < 1e-12, "F at {a}");
    }
}

#[test]
fn volume_at_one_half() {
    assert!((spheroid_volume(p(0.5)) - PI / 3.0).abs() < 1e-15);
}

#[test]
fn round_sphere_limits() {
    let a = p(1.0 - 1e-9);
    assert!((spheroid_willmore(a) - LIMIT_WILLMORE).abs() < 1e-6);
    assert!((spheroid_isoperimetric(a) - LIMIT_RATIO).abs() < 1e-6);
    assert!((spheroid_area(a) - LIMIT_AREA).abs() < 1e-6);
    assert!((spheroid_volume(a) - LIMIT_VOLUME).abs() < 1e-6);
    assert!(spheroid_isoperimetric(p(1e-6)) < 1e-4);
}

#[test]
fn willmore_exceeds_sphere_value() {
    for k in 1..1000 {
        assert!(spheroid_willmore(p(k as f64 / 1000.0)) >= 4.0 * PI);
    }
}

#[test]
fn ratio_is_consistent_with_area_and_volume() {
    for k in 1..100 {
        let a = p(k as f64 / 100.0);
        let (area, volume) = (spheroid_area(a), spheroid_volume(a));
        let direct = 36.0 * PI * volume * volume / (area * area * area);
        assert!(rel(direct, spheroid_isoperimetric(a)) < 1e-12);
        let i = spheroid_isoperimetric(a);
        assert!(i > 0.0 && i < 1.0);
    }
}

#[test]
fn out_of_range_parameters() {
    for a in [0.0, 1.0, -0.3, 1.5, f64::NAN] {
        assert!(SpheroidParam::new(a).is_err());
    }
    assert!(spheroid_profile(1.2, 64).is_err());
    assert!(invert_isoperimetric(1.0).is_err());
    assert!(invert_isoperimetric(0.0).is_err());
}

#[test]
fn inversion_round_trips() {
    let a = invert_isoperimetric(spheroid_isoperimetric(p(0.5))).unwrap();
    assert!((a.value() - 0.5).abs() < 1e-10);
    let a = invert_isoperimetric(0.99).unwrap();
    assert!(a.value() < 1.0);
    assert!((spheroid_isoperimetric(a) - 0.99).abs() <= 1e-12);
}

#[test]
fn inverted_spheroid_beats_sphere_bound() {
    for k in 1..100 {
        let sigma = k as f64 / 100.0;
        let a = invert_isoperimetric(sigma).unwrap();
        assert!((spheroid_isoperimetric(a) - sigma).abs() <= 1e-12);
        assert!(spheroid_willmore(a) < 4.0 * PI / sigma, "sigma {sigma}");
    }
}

#[test]
fn gap_function_is_negative() {
    for k in 1..=99 {
        assert!(gap_function(p(k as f64 / 100.0)) < 0.0);
    }
    // Dense sampling right up to the flat end.
    for k in 1..2000 {
        assert!(gap_function(p(0.9 + 0.1 * k as f64 / 2000.0)) < 0.0);
    }
}

#[test]
fn gap_function_flattens_at_one() {
    let values: Vec<f64> = [0.9, 0.95, 0.99, 0.999].iter().map(|a| gap_function(p(*a))).collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]));
    assert!(values[3].abs() < 1e-8);
    assert!(energy_gap(p(0.9999)).abs() < 1e-11);
}

#[test]
fn energy_gap_identity() {
    let g = GapEvaluation::new(p(0.5));
    assert!(g.identity_error() < 1e-12);
    // W and I evaluated separately at 30 digits give -0.23497094817248188.
    assert!(rel(energy_gap(p(0.5)), -0.234_970_948_172_481_9) < 1e-13);
    for k in 1..=99 {
        assert!(GapEvaluation::new(p(k as f64 / 100.0)).identity_error() < 1e-10, "a = 0.{k}");
    }
}

#[test]
fn unit_parameter_is_the_sphere() {
    let s = spheroid_profile(1.0, 128).unwrap();
    let u = sphere_profile(1.0, 128).unwrap();
    assert_eq!(s.radial(), u.radial());
    assert_eq!(s.height(), u.height());
}

#[test]
fn discrete_spheroid_matches_closed_forms() {
    let s = compute_geometry(&spheroid_profile(0.5, 1024).unwrap()).unwrap();
    assert!((s.volume - PI / 3.0).abs() < 1e-8);
    let err = |n: usize| rel(compute_geometry(&spheroid_profile(0.5, n).unwrap()).unwrap().area, spheroid_area(p(0.5)));
    assert!(err(128) / err(256) >= 3.5);
}

#[test]
fn table_rows_and_csv() {
    let rows = spheroid_table(0.05, 0.95, 19).unwrap();
    assert_eq!(rows.len(), 19);
    assert!(rows.iter().all(|r| r.gap_function < 0.0));
    let tail = spheroid_table(0.9, 0.99, 10).unwrap();
    assert!(tail.windows(2).all(|w| w[1].gap_function > w[0].gap_function));
    let csv = table_to_csv(&rows);
    assert!(csv.starts_with(TABLE_HEADER));
    assert_eq!(csv.lines().count(), 20);
    assert!(spheroid_table(0.5, 0.4, 5).is_err());
    assert!(spheroid_table(0.1, 0.4, 1).is_err());
}
