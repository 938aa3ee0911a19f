//! Spherical harmonics as eigenfunctions of the discrete Laplace–Beltrami
//! operator on the unit sphere, and symmetry on a spheroid.

use isoflow::geometry::{compute_geometry, laplace_beltrami, sphere_profile};
use isoflow::spheroid::spheroid_profile;

fn max_abs(v: impl Iterator<Item = f64>) -> f64 {
    v.map(f64::abs).fold(0.0, f64::max)
}

fn main() {
    for n in [64, 128, 256, 512] {
        let c = sphere_profile(1.0, n).unwrap();
        let z = c.height();
        let p2: Vec<f64> = z.iter().map(|z| 1.5 * z * z - 0.5).collect();
        let lz = laplace_beltrami(&c, z).unwrap();
        let lp = laplace_beltrami(&c, &p2).unwrap();
        println!(
            "n = {n:>4}: |Δz + 2z| = {:.2e}, |ΔP₂ + 6P₂| = {:.2e}",
            max_abs(lz.iter().zip(z).map(|(l, z)| l + 2.0 * z)),
            max_abs(lp.iter().zip(&p2).map(|(l, p)| l + 6.0 * p)),
        );
    }

    // ∫ u Δv = ∫ v Δu holds to roundoff.
    let c = spheroid_profile(0.4, 256).unwrap();
    let s = compute_geometry(&c).unwrap();
    let u: Vec<f64> = c.height().iter().map(|z| z.powi(3)).collect();
    let v: Vec<f64> = c.radial().iter().map(|r| r * r).collect();
    let lu = laplace_beltrami(&c, &u).unwrap();
    let lv = laplace_beltrami(&c, &v).unwrap();
    println!("spheroid a = 0.4: ∫uΔv - ∫vΔu = {:.2e}", s.inner(&u, &lv) - s.inner(&v, &lu));
}
