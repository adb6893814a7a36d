//! Cross-ratio of quadruples of distinct points, under the Euclidean or
//! spherical metric.  The two metrics give the same value on finite
//! quadruples because the conformal factors cancel.

use crate::error::{Error, Result};
use crate::metric::{distance, MetricKind};
use crate::point::{Point, DUPLICATE_TOL};

/// d(x,a) d(b,c) / (d(x,b) d(a,c)).
pub fn cross_ratio(x: Point, a: Point, b: Point, c: Point, metric: &MetricKind) -> Result<f64> {
    if matches!(metric, MetricKind::UltrametricRatio(_)) {
        return Err(Error::Domain(
            "cross-ratios are defined for the Euclidean and spherical metrics".into(),
        ));
    }
    let pts = [x, a, b, c];
    for i in 0..4 {
        for j in (i + 1)..4 {
            let coincident = match (pts[i], pts[j]) {
                (Point::Infinity, Point::Infinity) => true,
                (Point::Finite(z), Point::Finite(w)) => (z - w).norm() <= DUPLICATE_TOL,
                _ => false,
            };
            if coincident {
                return Err(Error::Domain(format!(
                    "cross-ratio requires distinct points (arguments {} and {} coincide)",
                    i, j
                )));
            }
        }
    }
    let num = distance(x, a, metric)? * distance(b, c, metric)?;
    let den = distance(x, b, metric)? * distance(a, c, metric)?;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_quadruple_with_infinity() {
        let v = cross_ratio(
            Point::finite(0.0, 0.0),
            Point::finite(1.0, 0.0),
            Point::finite(-1.0, 0.0),
            Point::Infinity,
            &MetricKind::Spherical,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn swapping_a_and_b_inverts_the_value() {
        let (x, a, b, c) = (
            Point::finite(0.3, -1.2),
            Point::finite(2.0, 0.5),
            Point::finite(-1.0, 1.0),
            Point::finite(0.0, 3.0),
        );
        let v = cross_ratio(x, a, b, c, &MetricKind::Euclidean).unwrap();
        let w = cross_ratio(x, b, a, c, &MetricKind::Euclidean).unwrap();
        assert!((v * w - 1.0).abs() < 1e-12);
    }

    #[test]
    fn euclidean_and_spherical_agree_on_finite_quadruples() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for _ in 0..100 {
            let pts: Vec<Point> = (0..4)
                .map(|_| Point::finite(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0)))
                .collect();
            let e = match cross_ratio(pts[0], pts[1], pts[2], pts[3], &MetricKind::Euclidean) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let s = cross_ratio(pts[0], pts[1], pts[2], pts[3], &MetricKind::Spherical).unwrap();
            assert!((e - s).abs() <= 1e-12 * e.abs().max(1.0), "e={} s={}", e, s);
        }
    }

    #[test]
    fn coincident_points_rejected() {
        let p = Point::finite(1.0, 1.0);
        let err = cross_ratio(p, p, Point::finite(0.0, 0.0), Point::finite(2.0, 0.0),
            &MetricKind::Euclidean);
        assert!(matches!(err, Err(Error::Domain(_))));
    }
}
