//! Finite labeled planar point sets, the universal carrier for every
//! experiment in this crate.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Tolerance below which two points are considered duplicates.
pub const DUPLICATE_TOL: f64 = 1e-12;

/// A point of the extended plane: a finite complex number or the formal
/// point at infinity (spherical-metric work only).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn finite(re: f64, im: f64) -> Self {
        Point::Finite(Complex64::new(re, im))
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            Point::Finite(z) => Some(*z),
            Point::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::Finite(z)
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::Finite(Complex64::new(x, 0.0))
    }
}

/// The inversion z -> 1/z on the extended plane, with 0 <-> infinity.
pub fn invert(p: Point) -> Point {
    match p {
        Point::Infinity => Point::finite(0.0, 0.0),
        Point::Finite(z) if z.norm_sqr() == 0.0 => Point::Infinity,
        Point::Finite(z) => Point::Finite(z.inv()),
    }
}

/// An ordered, index-addressable finite point set in the extended plane.
///
/// Construction rejects duplicate points (within [`DUPLICATE_TOL`]); order is
/// stable, so indices can be used as identities by covers, chains and
/// certificates.
#[derive(Clone, Debug)]
pub struct PointSet2D {
    points: Vec<Point>,
    labels: Vec<Option<String>>,
}

impl PointSet2D {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let labels = vec![None; points.len()];
        Self::with_labels(points, labels)
    }

    pub fn with_labels(points: Vec<Point>, labels: Vec<Option<String>>) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::Domain(format!(
                "label count {} does not match point count {}",
                labels.len(),
                points.len()
            )));
        }
        check_no_duplicates(&points)?;
        Ok(PointSet2D { points, labels })
    }

    /// Convenience constructor from finite complex numbers.
    pub fn from_complex(zs: impl IntoIterator<Item = Complex64>) -> Result<Self> {
        Self::new(zs.into_iter().map(Point::Finite).collect())
    }

    /// Convenience constructor from real abscissae.
    pub fn from_reals(xs: impl IntoIterator<Item = f64>) -> Result<Self> {
        Self::new(xs.into_iter().map(Point::from).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels[i].as_deref()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    /// True when every point is finite with exactly zero imaginary part.
    /// Several algorithms take an O(k) diameter shortcut on such sets.
    pub fn all_real(&self) -> bool {
        self.points
            .iter()
            .all(|p| matches!(p, Point::Finite(z) if z.im == 0.0))
    }

    pub fn contains_infinity(&self) -> bool {
        self.points.iter().any(Point::is_infinity)
    }

    /// Serialize as CSV lines `re,im[,label]`, infinity as `inf,inf`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (p, label) in self.points.iter().zip(&self.labels) {
            match p {
                Point::Finite(z) => {
                    out.push_str(&format_f64(z.re));
                    out.push(',');
                    out.push_str(&format_f64(z.im));
                }
                Point::Infinity => out.push_str("inf,inf"),
            }
            if let Some(l) = label {
                out.push(',');
                out.push_str(l);
            }
            out.push('\n');
        }
        out
    }

    /// Parse the CSV format produced by [`PointSet2D::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.splitn(3, ',');
            let re = fields.next().unwrap_or("").trim();
            let im = fields
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing imaginary part", lineno + 1)))?
                .trim();
            let label = fields.next().map(|s| s.trim().to_string());
            let point = if re == "inf" && im == "inf" {
                Point::Infinity
            } else {
                let re: f64 = re
                    .parse()
                    .map_err(|e| Error::Parse(format!("line {}: bad real part: {}", lineno + 1, e)))?;
                let im: f64 = im
                    .parse()
                    .map_err(|e| Error::Parse(format!("line {}: bad imaginary part: {}", lineno + 1, e)))?;
                Point::finite(re, im)
            };
            points.push(point);
            labels.push(label);
        }
        Self::with_labels(points, labels)
    }
}

/// Print a float with 17 significant digits so that CSV artifacts round-trip
/// bit-exactly.
pub fn format_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

fn check_no_duplicates(points: &[Point]) -> Result<()> {
    let mut infinity_seen = false;
    for p in points {
        if p.is_infinity() {
            if infinity_seen {
                return Err(Error::Domain("duplicate point at infinity".into()));
            }
            infinity_seen = true;
        }
    }
    // Sort finite points by real part and sweep a window of width
    // DUPLICATE_TOL; near-duplicates must land in the same window.
    let mut order: Vec<usize> = (0..points.len())
        .filter(|&i| !points[i].is_infinity())
        .collect();
    order.sort_by(|&a, &b| {
        let za = points[a].as_finite().unwrap();
        let zb = points[b].as_finite().unwrap();
        za.re.partial_cmp(&zb.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(za.im.partial_cmp(&zb.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    for (rank, &i) in order.iter().enumerate() {
        let zi = points[i].as_finite().unwrap();
        if !zi.re.is_finite() || !zi.im.is_finite() {
            return Err(Error::Domain(format!("non-finite coordinate at index {}", i)));
        }
        for &j in order[rank + 1..].iter() {
            let zj = points[j].as_finite().unwrap();
            if zj.re - zi.re > DUPLICATE_TOL {
                break;
            }
            if (zi - zj).norm() <= DUPLICATE_TOL {
                return Err(Error::Domain(format!(
                    "duplicate points at indices {} and {} (within {:.0e})",
                    i.min(j),
                    i.max(j),
                    DUPLICATE_TOL
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_within_tolerance() {
        let err = PointSet2D::from_reals([1.0, 2.0, 1.0 + 1e-13]).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        // Just outside the tolerance is fine.
        assert!(PointSet2D::from_reals([1.0, 1.0 + 1e-11]).is_ok());
    }

    #[test]
    fn rejects_duplicate_infinity() {
        assert!(PointSet2D::new(vec![Point::Infinity, Point::Infinity]).is_err());
        assert!(PointSet2D::new(vec![Point::Infinity, Point::finite(0.0, 0.0)]).is_ok());
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let ps = PointSet2D::with_labels(
            vec![
                Point::finite(0.1 + 0.2, -3.25e-17),
                Point::Infinity,
                Point::finite(1.0 / 3.0, 2.0f64.sqrt()),
            ],
            vec![Some("a".into()), None, Some("c".into())],
        )
        .unwrap();
        let csv = ps.to_csv();
        let back = PointSet2D::from_csv(&csv).unwrap();
        assert_eq!(back.len(), 3);
        for i in 0..3 {
            assert_eq!(back.point(i), ps.point(i), "point {} must round-trip exactly", i);
            assert_eq!(back.label(i), ps.label(i));
        }
        assert_eq!(back.to_csv(), csv);
    }

    #[test]
    fn inversion_swaps_zero_and_infinity() {
        assert_eq!(invert(Point::Infinity), Point::finite(0.0, 0.0));
        assert_eq!(invert(Point::finite(0.0, 0.0)), Point::Infinity);
        let z = Complex64::new(3.0, -4.0);
        let w = invert(Point::Finite(z)).as_finite().unwrap();
        assert!((w * z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
