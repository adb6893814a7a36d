//! Exponential preimages with doubling moduli: for nonzero targets y_i,
//! points x_i = Log y_i + 2 pi i k_i with |x_1| < |x_2| < ... growing at
//! ratio >= 2, so exp(x_i) = y_i while the preimage set carries a ratio
//! certificate at lambda = 2.

use crate::error::{Error, Result};
use crate::point::PointSet2D;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// The preimage sequence together with its exact decomposition
/// x_i = logs[i] + 2 pi i * windings[i].
///
/// For large indices |x_i| grows like 2^i, far beyond the range where f64
/// angle reduction is meaningful, so `exp_at` evaluates exp through the
/// decomposition: exp(x_i) = exp(logs[i]) exactly, because the discarded
/// part is an integer multiple of 2 pi i.
#[derive(Clone, Debug)]
pub struct ExpPreimage {
    pub points: PointSet2D,
    pub windings: Vec<i64>,
    pub logs: Vec<Complex64>,
    /// The radius schedule R_1, R_2, ... with R_i < |x_i| < R_{i+1}/2.
    pub radii_schedule: Vec<f64>,
}

impl ExpPreimage {
    /// exp(x_i), evaluated with the winding removed exactly.
    pub fn exp_at(&self, i: usize) -> Complex64 {
        self.logs[i].exp()
    }

    pub fn len(&self) -> usize {
        self.logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logs.is_empty()
    }
}

/// Construct x_i with exp(x_i) = y_i and |x_{i+1}| >= 2 |x_i|, following
/// the schedule R_1 = start_radius, R_{i+1} = max(2 R_i + 1, 2 |x_i| + 1);
/// the +1 keeps the doubling strict under floating point.
pub fn exp_preimage_sequence(targets: &[Complex64], start_radius: f64) -> Result<ExpPreimage> {
    if !(start_radius > 0.0) {
        return Err(Error::Domain(format!("start radius must be positive, got {}", start_radius)));
    }
    let mut points = Vec::with_capacity(targets.len());
    let mut windings = Vec::with_capacity(targets.len());
    let mut logs = Vec::with_capacity(targets.len());
    let mut radii_schedule = Vec::with_capacity(targets.len());

    let mut big_r = start_radius;
    let mut prev_norm = 0.0f64;
    for (i, &y) in targets.iter().enumerate() {
        if y.norm() == 0.0 {
            return Err(Error::Domain(format!(
                "target {} is zero, the exceptional value of exp",
                i
            )));
        }
        let log_y = Complex64::new(y.norm().ln(), y.arg());
        // Smallest positive winding k with |log_y + 2 pi i k| > R_i.
        let need = (big_r * big_r - log_y.re * log_y.re).max(0.0).sqrt();
        let mut k = (((need - log_y.im) / TAU).ceil() as i64).max(1);
        let x_of = |k: i64| Complex64::new(log_y.re, log_y.im + TAU * k as f64);
        while x_of(k).norm() <= big_r {
            k += 1;
        }
        let x = x_of(k);
        let xn = x.norm();
        if i > 0 && xn < 2.0 * prev_norm {
            return Err(Error::ConstructionViolation(format!(
                "modulus doubling failed at index {}: {} < 2 * {}",
                i, xn, prev_norm
            )));
        }
        radii_schedule.push(big_r);
        points.push(x);
        windings.push(k);
        logs.push(log_y);
        big_r = (2.0 * big_r + 1.0).max(2.0 * xn + 1.0);
        prev_norm = xn;
    }
    Ok(ExpPreimage {
        points: PointSet2D::from_complex(points)?,
        windings,
        logs,
        radii_schedule,
    })
}
