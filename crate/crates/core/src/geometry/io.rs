use std::fmt::Write as _;
use std::path::Path;

use super::{GeometryError, ProfileCurve};

pub const PROFILE_HEADER: &str = "# isoflow-profile v1";

/// Renders `curve` as a profile snapshot.
pub fn profile_to_string(curve: &ProfileCurve) -> String {
    let mut out = format!("{PROFILE_HEADER} n={}\n", curve.len());
    for i in 0..curve.len() {
        let _ = writeln!(out, "{} {} {}", curve.params()[i], curve.radial()[i], curve.height()[i]);
    }
    out
}

pub fn parse_profile(text: &str) -> Result<ProfileCurve, GeometryError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| GeometryError::Format("empty file".into()))?;
    let n: usize = header
        .strip_prefix(PROFILE_HEADER)
        .and_then(|rest| rest.trim().strip_prefix("n="))
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| GeometryError::Format(format!("bad header {header:?}")))?;
    let mut cols = [Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n)];
    for (k, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(GeometryError::Format(format!("row {}: expected 3 columns", k + 1)));
        }
        for (col, f) in cols.iter_mut().zip(&fields) {
            col.push(f.parse::<f64>().map_err(|e| GeometryError::Format(format!("row {}: {e}", k + 1)))?);
        }
    }
    if cols[0].len() != n {
        return Err(GeometryError::Format(format!("header says n={n}, found {} rows", cols[0].len())));
    }
    let [t, r, z] = cols;
    ProfileCurve::new(t, r, z)
}

pub fn write_profile(path: impl AsRef<Path>, curve: &ProfileCurve) -> Result<(), GeometryError> {
    std::fs::write(path, profile_to_string(curve)).map_err(|e| GeometryError::Io(e.to_string()))
}

pub fn read_profile(path: impl AsRef<Path>) -> Result<ProfileCurve, GeometryError> {
    let text = std::fs::read_to_string(path).map_err(|e| GeometryError::Io(e.to_string()))?;
    parse_profile(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sphere_profile;

    #[test]
    fn header_and_rows() {
        let c = sphere_profile(1.0, 16).unwrap();
        let s = profile_to_string(&c);
        assert!(s.starts_with("# isoflow-profile v1 n=16\n"));
        assert_eq!(s.lines().count(), 17);
        assert_eq!(parse_profile(&s).unwrap(), c);
    }

    #[test]
    fn malformed_files() {
        assert!(parse_profile("").is_err());
        assert!(parse_profile("# isoflow-profile v2 n=16\n").is_err());
        let c = sphere_profile(1.0, 16).unwrap();
        let s = profile_to_string(&c).replace("n=16", "n=17");
        assert!(matches!(parse_profile(&s), Err(GeometryError::Format(_))));
    }
}
