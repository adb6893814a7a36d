//! The three metrics used throughout: Euclidean, spherical (extended plane),
//! and the explicit ultrametric on registered ratio sequences.

use crate::error::{Error, Result};
use crate::point::{Point, DUPLICATE_TOL};
use num_complex::Complex64;

/// A sequence {x_k} with d(x_{k+1}, o) >= lambda * d(x_k, o), registered so
/// the ultrametric d_U(x_m, x_n) = r_{max(m,n)} can be evaluated on it.
///
/// Built by `dimension::ratio_sequence_certificate`; the certificate is the
/// only constructor, so an instance always carries strictly increasing radii.
#[derive(Clone, Debug)]
pub struct RatioSequence {
    basepoint: Complex64,
    lambda: f64,
    points: Vec<Complex64>,
    radii: Vec<f64>,
}

impl RatioSequence {
    pub(crate) fn new(basepoint: Complex64, lambda: f64, points: Vec<Complex64>) -> Self {
        let radii = points.iter().map(|z| (z - basepoint).norm()).collect();
        RatioSequence { basepoint, lambda, points, radii }
    }

    pub fn basepoint(&self) -> Complex64 {
        self.basepoint
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn radius(&self, k: usize) -> f64 {
        self.radii[k]
    }

    /// Index of a registered point, matched by coordinates within the
    /// duplicate tolerance.
    pub fn index_of(&self, z: Complex64) -> Option<usize> {
        let r = (z - self.basepoint).norm();
        // Radii are strictly increasing; binary search then check neighbors.
        let pos = self.radii.partition_point(|&x| x < r);
        for k in pos.saturating_sub(1)..=(pos.min(self.points.len().saturating_sub(1))) {
            if k < self.points.len() && (self.points[k] - z).norm() <= DUPLICATE_TOL {
                return Some(k);
            }
        }
        None
    }

    /// d_U(x_m, x_n): zero on the diagonal, r_{max(m,n)} off it.
    pub fn ultrametric(&self, m: usize, n: usize) -> f64 {
        if m == n {
            0.0
        } else {
            self.radii[m.max(n)]
        }
    }
}

/// Which metric to use on the point set.
#[derive(Clone, Debug)]
pub enum MetricKind {
    Euclidean,
    /// Metric on the extended plane; accepts the infinity marker and is
    /// bounded by 1.
    Spherical,
    /// Ultrametric on a registered ratio sequence; rejects points outside
    /// the sequence and the infinity marker.
    UltrametricRatio(RatioSequence),
}

/// Spherical distance between finite complex numbers.
pub fn spherical(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
}

fn spherical_point(a: Point, b: Point) -> f64 {
    match (a, b) {
        (Point::Finite(z), Point::Finite(w)) => spherical(z, w),
        (Point::Finite(z), Point::Infinity) | (Point::Infinity, Point::Finite(z)) => {
            1.0 / (1.0 + z.norm_sqr()).sqrt()
        }
        (Point::Infinity, Point::Infinity) => 0.0,
    }
}

/// Distance between two points of the extended plane under `metric`.
///
/// The infinity marker is only meaningful under the spherical metric; the
/// ultrametric is only defined on points of its registered sequence.
pub fn distance(a: Point, b: Point, metric: &MetricKind) -> Result<f64> {
    match metric {
        MetricKind::Euclidean => match (a, b) {
            (Point::Finite(z), Point::Finite(w)) => Ok((z - w).norm()),
            _ => Err(Error::Domain(
                "the point at infinity has no Euclidean distance".into(),
            )),
        },
        MetricKind::Spherical => Ok(spherical_point(a, b)),
        MetricKind::UltrametricRatio(seq) => {
            let (z, w) = match (a, b) {
                (Point::Finite(z), Point::Finite(w)) => (z, w),
                _ => {
                    return Err(Error::Domain(
                        "the point at infinity is not part of a ratio sequence".into(),
                    ))
                }
            };
            let m = seq.index_of(z).ok_or_else(|| {
                Error::Domain(format!("point {} is not registered in the ratio sequence", z))
            })?;
            let n = seq.index_of(w).ok_or_else(|| {
                Error::Domain(format!("point {} is not registered in the ratio sequence", w))
            })?;
            Ok(seq.ultrametric(m, n))
        }
    }
}
