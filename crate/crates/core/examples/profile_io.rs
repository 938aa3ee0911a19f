//! Writes a profile snapshot, reads it back and prints its invariants.
//!
//! cargo run --example profile_io [path]

use isoflow::geometry::{compute_geometry, read_profile, write_profile};
use isoflow::spheroid::spheroid_profile;

fn main() {
    let path =
        std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().join("spheroid.txt").display().to_string());
    let c = spheroid_profile(0.7, 128).unwrap();
    write_profile(&path, &c).unwrap();
    let back = read_profile(&path).unwrap();
    assert_eq!(back, c);
    let s = compute_geometry(&back).unwrap();
    println!(
        "{path}: n = {}, A = {:.12}, V = {:.12}, I = {:.12}, W = {:.12}",
        back.len(),
        s.area,
        s.volume,
        s.ratio,
        s.willmore
    );
}
