//! Polynomials and the radial-growth constants R0, c0 with
//! Re(q(r+h) - q(r)) >= c0 r^(d-1) h for r >= R0, h > 0.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// A polynomial a_0 + a_1 z + ... + a_d z^d of degree d >= 1.
#[derive(Clone, Debug)]
pub struct PolynomialSpec {
    coeffs: Vec<Complex64>,
}

impl PolynomialSpec {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Domain("polynomial must have degree >= 1".into()));
        }
        if coeffs.last().unwrap().norm() == 0.0 {
            return Err(Error::Domain("leading coefficient must be nonzero".into()));
        }
        Ok(PolynomialSpec { coeffs })
    }

    pub fn from_reals(coeffs: impl IntoIterator<Item = f64>) -> Result<Self> {
        Self::new(coeffs.into_iter().map(|c| Complex64::new(c, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Re(q(r+h) - q(r)) for real r, h, evaluated through the factorization
    /// (r+h)^k - r^k = h * sum_j (r+h)^j r^(k-1-j), which has no cancellation
    /// for r, h > 0.
    pub fn real_increment(&self, r: f64, h: f64) -> f64 {
        let rh = r + h;
        let mut total = 0.0;
        for (k, &a) in self.coeffs.iter().enumerate().skip(1) {
            let mut s = 0.0;
            for j in 0..k {
                s += rh.powi(j as i32) * r.powi((k - 1 - j) as i32);
            }
            total += a.re * h * s;
        }
        total
    }
}

/// The constants of the radial growth estimate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RadialGrowthConstants {
    /// Sum of the moduli of the derivative coefficients below the top term.
    pub c_sum: f64,
    pub r0: f64,
    pub c0: f64,
}

/// Compute C = sum_{m<=d-2} |c_m| over the derivative q' = d a_d z^(d-1) +
/// sum c_m z^m, then R0 = max(1, 2C/(d a_d)) and c0 = d a_d / 2, and verify
/// the growth inequality numerically on a 50x20 grid r in [R0, 4 R0],
/// h in [1e-3, 1].
pub fn radial_growth_constants(q: &PolynomialSpec) -> Result<RadialGrowthConstants> {
    let d = q.degree();
    let lead = q.leading();
    if lead.im != 0.0 || lead.re <= 0.0 {
        return Err(Error::Domain(format!(
            "radial growth requires a real positive leading coefficient, got {}",
            lead
        )));
    }
    let a_d = lead.re;
    // Derivative coefficients c_m = (m+1) a_{m+1} for m = 0..d-2.
    let c_sum: f64 = (0..d.saturating_sub(1))
        .map(|m| ((m + 1) as f64) * q.coeffs()[m + 1].norm())
        .sum();
    let r0 = 1f64.max(2.0 * c_sum / (d as f64 * a_d));
    let c0 = 0.5 * d as f64 * a_d;

    for i in 0..50 {
        let r = r0 + (4.0 * r0 - r0) * i as f64 / 49.0;
        for j in 0..20 {
            let h = 1e-3 * 1000f64.powf(j as f64 / 19.0);
            let lhs = q.real_increment(r, h);
            let rhs = c0 * r.powi(d as i32 - 1) * h;
            if lhs < rhs {
                return Err(Error::ConstructionViolation(format!(
                    "radial growth inequality failed at r={} h={}: {} < {}",
                    r, h, lhs, rhs
                )));
            }
        }
    }
    Ok(RadialGrowthConstants { c_sum, r0, c0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_polynomial() {
        let q = PolynomialSpec::from_reals([0.0, 1.0]).unwrap();
        let c = radial_growth_constants(&q).unwrap();
        assert_eq!(c.c_sum, 0.0);
        assert_eq!(c.r0, 1.0);
        assert_eq!(c.c0, 0.5);
    }

    #[test]
    fn pure_square() {
        let q = PolynomialSpec::from_reals([0.0, 0.0, 1.0]).unwrap();
        let c = radial_growth_constants(&q).unwrap();
        assert_eq!(c.c_sum, 0.0);
        assert_eq!(c.r0, 1.0);
        assert_eq!(c.c0, 1.0);
    }

    #[test]
    fn square_plus_linear_term() {
        // q(z) = z^2 + 10z: q' = 2z + 10, so C = 10, R0 = 10, c0 = 1.
        let q = PolynomialSpec::from_reals([0.0, 10.0, 1.0]).unwrap();
        let c = radial_growth_constants(&q).unwrap();
        assert_eq!(c.c_sum, 10.0);
        assert_eq!(c.r0, 10.0);
        assert_eq!(c.c0, 1.0);
    }

    #[test]
    fn non_positive_leading_coefficient_rejected() {
        let q = PolynomialSpec::from_reals([0.0, -1.0]).unwrap();
        assert!(radial_growth_constants(&q).is_err());
        let q = PolynomialSpec::new(vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.5),
        ])
        .unwrap();
        assert!(radial_growth_constants(&q).is_err());
    }

    #[test]
    fn real_increment_matches_direct_evaluation() {
        let q = PolynomialSpec::new(vec![
            Complex64::new(1.0, -2.0),
            Complex64::new(-0.5, 0.25),
            Complex64::new(0.0, 1.0),
            Complex64::new(2.0, 0.0),
        ])
        .unwrap();
        for r in [1.0, 3.7, 10.0] {
            for h in [0.001, 0.3, 1.0] {
                let direct = (q.eval(Complex64::new(r + h, 0.0)) - q.eval(Complex64::new(r, 0.0))).re;
                let stable = q.real_increment(r, h);
                assert!(
                    (direct - stable).abs() <= 1e-10 * direct.abs().max(1.0),
                    "r={} h={} direct={} stable={}",
                    r,
                    h,
                    direct,
                    stable
                );
            }
        }
    }

    #[test]
    fn growth_inequality_holds_for_random_polynomials() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let d = rng.gen_range(1..=5usize);
            let mut coeffs: Vec<Complex64> = (0..d)
                .map(|_| Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
                .collect();
            coeffs.push(Complex64::new(rng.gen_range(0.1..10.0), 0.0));
            let q = PolynomialSpec::new(coeffs).unwrap();
            // radial_growth_constants itself validates the 50x20 grid.
            radial_growth_constants(&q).unwrap();
        }
    }
}
