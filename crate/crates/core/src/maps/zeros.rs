//! Zero-set generators with summable inverse moduli, closed-form tail
//! bounds, and the counting function m_R.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Generator for the zero sequence alpha_1, alpha_2, ... enumerated with
/// non-decreasing moduli.  Every variant satisfies sum_j 1/|alpha_j| <
/// infinity: geometric and power growth by closed form, explicit lists by
/// finiteness.
#[derive(Clone, Debug, Serialize)]
pub enum ZeroSetSpec {
    /// alpha_j = lambda^j, lambda > 1.
    Geometric { lambda: f64 },
    /// alpha_j = scale * j^beta, beta > 1, scale > 0.
    Power { beta: f64, scale: f64 },
    /// A finite list, sorted by modulus at construction.
    Explicit { zeros: Vec<(f64, f64)> },
}

impl ZeroSetSpec {
    pub fn geometric(lambda: f64) -> Result<Self> {
        if !(lambda > 1.0) {
            return Err(Error::Domain(format!("geometric ratio must exceed 1, got {}", lambda)));
        }
        Ok(ZeroSetSpec::Geometric { lambda })
    }

    pub fn power(beta: f64, scale: f64) -> Result<Self> {
        if !(beta > 1.0) {
            return Err(Error::Domain(format!(
                "power exponent must exceed 1 for a summable tail, got {}",
                beta
            )));
        }
        if !(scale > 0.0) {
            return Err(Error::Domain(format!("power scale must be positive, got {}", scale)));
        }
        Ok(ZeroSetSpec::Power { beta, scale })
    }

    pub fn explicit(zeros: impl IntoIterator<Item = Complex64>) -> Result<Self> {
        let mut zs: Vec<Complex64> = zeros.into_iter().collect();
        if zs.iter().any(|z| z.norm() == 0.0) {
            return Err(Error::Domain("zero sets exclude the origin (carried by z^m)".into()));
        }
        zs.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal));
        Ok(ZeroSetSpec::Explicit { zeros: zs.into_iter().map(|z| (z.re, z.im)).collect() })
    }

    /// Number of generated zeros, when finite.
    pub fn finite_len(&self) -> Option<u64> {
        match self {
            ZeroSetSpec::Explicit { zeros } => Some(zeros.len() as u64),
            _ => None,
        }
    }

    /// The j-th zero (1-based, following the enumeration by modulus).
    pub fn zero(&self, j: u64) -> Complex64 {
        debug_assert!(j >= 1);
        match self {
            ZeroSetSpec::Geometric { lambda } => Complex64::new(lambda.powi(j as i32), 0.0),
            ZeroSetSpec::Power { beta, scale } => {
                Complex64::new(scale * (j as f64).powf(*beta), 0.0)
            }
            ZeroSetSpec::Explicit { zeros } => {
                let (re, im) = zeros[(j - 1) as usize];
                Complex64::new(re, im)
            }
        }
    }

    pub fn modulus(&self, j: u64) -> f64 {
        match self {
            ZeroSetSpec::Geometric { lambda } => lambda.powi(j as i32),
            ZeroSetSpec::Power { beta, scale } => scale * (j as f64).powf(*beta),
            ZeroSetSpec::Explicit { zeros } => {
                let (re, im) = zeros[(j - 1) as usize];
                Complex64::new(re, im).norm()
            }
        }
    }

    /// #{j : |alpha_j| < R}.
    pub fn count_in_ball(&self, big_r: f64) -> u64 {
        match self {
            ZeroSetSpec::Geometric { lambda } => {
                if lambda.powi(1) >= big_r {
                    return 0;
                }
                let mut k = (big_r.ln() / lambda.ln()).floor().max(0.0) as i64;
                while k > 0 && lambda.powi(k as i32) >= big_r {
                    k -= 1;
                }
                while lambda.powi(k as i32 + 1) < big_r {
                    k += 1;
                }
                k.max(0) as u64
            }
            ZeroSetSpec::Power { beta, scale } => {
                if scale * 1.0 >= big_r {
                    return 0;
                }
                let mut k = ((big_r / scale).powf(1.0 / beta)).floor().max(0.0) as i64;
                while k > 0 && scale * (k as f64).powf(*beta) >= big_r {
                    k -= 1;
                }
                while scale * ((k + 1) as f64).powf(*beta) < big_r {
                    k += 1;
                }
                k.max(0) as u64
            }
            ZeroSetSpec::Explicit { zeros } => zeros
                .iter()
                .filter(|&&(re, im)| Complex64::new(re, im).norm() < big_r)
                .count() as u64,
        }
    }

    /// An upper bound on sum_{j > J} 1/|alpha_j| (exact for geometric and
    /// explicit variants, an integral bound for power growth).
    pub fn tail_inverse_modulus(&self, j_from: u64) -> f64 {
        match self {
            ZeroSetSpec::Geometric { lambda } => lambda.powi(-(j_from as i32)) / (lambda - 1.0),
            ZeroSetSpec::Power { beta, scale } => {
                if j_from == 0 {
                    1.0 / scale + self.tail_inverse_modulus(1)
                } else {
                    (j_from as f64).powf(1.0 - beta) / (scale * (beta - 1.0))
                }
            }
            ZeroSetSpec::Explicit { zeros } => zeros
                .iter()
                .skip(j_from as usize)
                .map(|&(re, im)| 1.0 / Complex64::new(re, im).norm())
                .sum(),
        }
    }
}

/// m_R(A) = #{alpha in A : alpha in B(0, R)} (open ball).
pub fn counting_function(zeros: &ZeroSetSpec, big_r: f64) -> Result<u64> {
    if !(big_r > 0.0) {
        return Err(Error::Domain(format!("counting radius must be positive, got {}", big_r)));
    }
    Ok(zeros.count_in_ball(big_r))
}

/// Counting sweep over the dyadic grid R = 2^t, t = 1..=t_max, reporting
/// (R, m_R, m_R / R).  For any summable spec the ratio column tends to 0.
pub fn counting_sweep(zeros: &ZeroSetSpec, t_max: u32) -> Result<Vec<(f64, u64, f64)>> {
    let mut out = Vec::with_capacity(t_max as usize);
    for t in 1..=t_max {
        let big_r = 2.0f64.powi(t as i32);
        let m = counting_function(zeros, big_r)?;
        out.push((big_r, m, m as f64 / big_r));
    }
    Ok(out)
}
