//! Genus-one canonical products F(z) = z^m e^q(z) prod(1 - z/alpha_j),
//! evaluated as log|F| with a certified truncation tail.

use super::polynomial::PolynomialSpec;
use super::zeros::ZeroSetSpec;
use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_TRUNCATION: u64 = 1_000_000;

/// F(z) = z^m e^q(z) prod_j (1 - z/alpha_j).
#[derive(Clone, Debug)]
pub struct Genus1Function {
    m: u32,
    q: PolynomialSpec,
    zeros: ZeroSetSpec,
}

/// log|F(z)| together with the truncation bookkeeping.
#[derive(Clone, Copy, Debug)]
pub struct LogAbsF {
    pub value: f64,
    /// Certified bound on the dropped tail; strictly below the requested
    /// tolerance.
    pub tail_bound: f64,
    /// Number of product factors evaluated.
    pub j_used: u64,
}

impl Genus1Function {
    pub fn new(m: u32, q: PolynomialSpec, zeros: ZeroSetSpec) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain("the order m at the origin must be >= 1".into()));
        }
        Ok(Genus1Function { m, q, zeros })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> &PolynomialSpec {
        &self.q
    }

    pub fn zeros(&self) -> &ZeroSetSpec {
        &self.zeros
    }

    /// log|F(z)| = m log|z| + Re q(z) + sum_{j<=J} log|1 - z/alpha_j|, with
    /// J minimal such that the dropped tail is certified below `tol`.
    ///
    /// The tail certificate uses |log(1-w)| <= 2|w| for |w| <= 1/2, so J is
    /// first raised until |z/alpha_j| <= 1/2 for every dropped factor and
    /// then until 2|z| sum_{j>J} 1/|alpha_j| < tol.
    pub fn log_abs(&self, z: Complex64, tol: f64) -> Result<LogAbsF> {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", tol)));
        }
        let zn = z.norm();
        if zn == 0.0 {
            return Err(Error::PoleOfLog("log|F| diverges at the origin (m >= 1)".into()));
        }

        // Every factor with |alpha_j| < 2|z| must be evaluated explicitly.
        let mut j_used = self.zeros.count_in_ball(2.0 * zn);
        if let Some(len) = self.zeros.finite_len() {
            j_used = j_used.min(len);
        }
        loop {
            let at_end = self.zeros.finite_len().is_some_and(|len| j_used >= len);
            if at_end {
                break;
            }
            let tail = 2.0 * zn * self.zeros.tail_inverse_modulus(j_used);
            if tail < tol {
                break;
            }
            j_used += 1;
            if j_used > MAX_TRUNCATION {
                return Err(Error::Capability(format!(
                    "tail tolerance {} not reachable within {} factors",
                    tol, MAX_TRUNCATION
                )));
            }
        }
        let tail_bound = if self.zeros.finite_len().is_some_and(|len| j_used >= len) {
            0.0
        } else {
            2.0 * zn * self.zeros.tail_inverse_modulus(j_used)
        };

        let mut value = self.m as f64 * zn.ln() + self.q.eval(z).re;
        for j in 1..=j_used {
            let factor = Complex64::new(1.0, 0.0) - z / self.zeros.zero(j);
            let fnorm = factor.norm();
            if fnorm == 0.0 {
                return Err(Error::PoleOfLog(format!(
                    "z coincides with zero alpha_{} = {}",
                    j,
                    self.zeros.zero(j)
                )));
            }
            value += fnorm.ln();
        }
        Ok(LogAbsF { value, tail_bound, j_used })
    }

    /// Flat key-value form `m=.., q=a0,a1,..,ad, zeros=geometric:lambda`.
    pub fn to_spec_string(&self) -> String {
        let q = self
            .q
            .coeffs()
            .iter()
            .map(|c| {
                if c.im == 0.0 {
                    crate::point::format_f64(c.re)
                } else {
                    format!("{}{:+}i", crate::point::format_f64(c.re), c.im)
                }
            })
            .collect::<Vec<_>>()
            .join(",");
        let zeros = match &self.zeros {
            ZeroSetSpec::Geometric { lambda } => {
                format!("geometric:{}", crate::point::format_f64(*lambda))
            }
            ZeroSetSpec::Power { beta, scale } => format!(
                "power:{}:{}",
                crate::point::format_f64(*beta),
                crate::point::format_f64(*scale)
            ),
            ZeroSetSpec::Explicit { zeros } => format!(
                "explicit:{}",
                zeros
                    .iter()
                    .map(|&(re, _)| crate::point::format_f64(re))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        };
        format!("m={}, q={}, zeros={}", self.m, q, zeros)
    }

    /// Parse the format produced by [`Genus1Function::to_spec_string`].
    /// Tokens without `=` continue the previous field, so `q=0,1` survives
    /// the comma-separated layout.  Real coefficients only.
    pub fn from_spec_string(text: &str) -> Result<Self> {
        let mut fields: Vec<(String, String)> = Vec::new();
        for raw in text.split(',') {
            let tok = raw.trim();
            if tok.is_empty() {
                continue;
            }
            if let Some(eq) = tok.find('=') {
                fields.push((tok[..eq].trim().to_string(), tok[eq + 1..].trim().to_string()));
            } else if let Some(last) = fields.last_mut() {
                last.1.push(',');
                last.1.push_str(tok);
            } else {
                return Err(Error::Parse(format!("unexpected token '{}'", tok)));
            }
        }
        let mut m: Option<u32> = None;
        let mut q: Option<PolynomialSpec> = None;
        let mut zeros: Option<ZeroSetSpec> = None;
        for (key, value) in fields {
            match key.as_str() {
                "m" => {
                    m = Some(value.parse().map_err(|e| Error::Parse(format!("bad m: {}", e)))?)
                }
                "q" => {
                    let coeffs = value
                        .split(',')
                        .map(|c| c.trim().parse::<f64>())
                        .collect::<std::result::Result<Vec<f64>, _>>()
                        .map_err(|e| Error::Parse(format!("bad coefficient in q: {}", e)))?;
                    q = Some(PolynomialSpec::from_reals(coeffs)?);
                }
                "zeros" => {
                    let mut parts = value.split(':');
                    let kind = parts.next().unwrap_or("");
                    zeros = Some(match kind {
                        "geometric" => {
                            let lambda: f64 = parts
                                .next()
                                .ok_or_else(|| Error::Parse("geometric needs a ratio".into()))?
                                .parse()
                                .map_err(|e| Error::Parse(format!("bad lambda: {}", e)))?;
                            ZeroSetSpec::geometric(lambda)?
                        }
                        "power" => {
                            let beta: f64 = parts
                                .next()
                                .ok_or_else(|| Error::Parse("power needs an exponent".into()))?
                                .parse()
                                .map_err(|e| Error::Parse(format!("bad beta: {}", e)))?;
                            let scale: f64 = parts.next().unwrap_or("1").parse().map_err(|e| {
                                Error::Parse(format!("bad scale: {}", e))
                            })?;
                            ZeroSetSpec::power(beta, scale)?
                        }
                        "explicit" => {
                            let list = parts
                                .next()
                                .ok_or_else(|| Error::Parse("explicit needs a list".into()))?;
                            let zs = list
                                .split(',')
                                .map(|v| v.trim().parse::<f64>())
                                .collect::<std::result::Result<Vec<f64>, _>>()
                                .map_err(|e| Error::Parse(format!("bad explicit zero: {}", e)))?;
                            ZeroSetSpec::explicit(zs.into_iter().map(|x| Complex64::new(x, 0.0)))?
                        }
                        other => {
                            return Err(Error::Parse(format!("unknown zero generator '{}'", other)))
                        }
                    });
                }
                other => return Err(Error::Parse(format!("unknown key '{}'", other))),
            }
        }
        Genus1Function::new(
            m.ok_or_else(|| Error::Parse("missing m".into()))?,
            q.ok_or_else(|| Error::Parse("missing q".into()))?,
            zeros.ok_or_else(|| Error::Parse("missing zeros".into()))?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_f() -> Genus1Function {
        Genus1Function::new(
            1,
            PolynomialSpec::from_reals([0.0, 1.0]).unwrap(),
            ZeroSetSpec::geometric(2.0).unwrap(),
        )
        .unwrap()
    }

    /// Long-truncation oracle: direct sum over a fixed large factor count.
    fn log_abs_oracle(f: &Genus1Function, z: Complex64, j_terms: u64) -> f64 {
        let mut v = f.m() as f64 * z.norm().ln() + f.q().eval(z).re;
        for j in 1..=j_terms {
            v += (Complex64::new(1.0, 0.0) - z / f.zeros().zero(j)).norm().ln();
        }
        v
    }

    #[test]
    fn matches_long_truncation_at_one() {
        let f = sample_f();
        let got = f.log_abs(Complex64::new(1.0, 0.0), 1e-12).unwrap();
        let oracle = log_abs_oracle(&f, Complex64::new(1.0, 0.0), 60);
        assert!(
            (got.value - oracle).abs() < 1e-10,
            "value {} oracle {}",
            got.value,
            oracle
        );
        assert!(got.tail_bound < 1e-12);
    }

    #[test]
    fn evaluation_at_a_zero_is_a_pole_error() {
        let f = sample_f();
        let err = f.log_abs(Complex64::new(2.0, 0.0), 1e-8);
        assert!(matches!(err, Err(Error::PoleOfLog(_))));
        let err = f.log_abs(Complex64::new(0.0, 0.0), 1e-8);
        assert!(matches!(err, Err(Error::PoleOfLog(_))));
    }

    #[test]
    fn conjugation_symmetry_for_real_data() {
        let f = sample_f();
        for z in [Complex64::new(3.3, 1.7), Complex64::new(-11.0, 40.0), Complex64::new(0.1, -5.0)]
        {
            let a = f.log_abs(z, 1e-10).unwrap().value;
            let b = f.log_abs(z.conj(), 1e-10).unwrap().value;
            assert_eq!(a, b, "conjugate evaluations must agree bit-for-bit");
        }
    }

    #[test]
    fn doubling_truncation_stays_within_tail_bound() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        let specs = [
            ZeroSetSpec::geometric(2.0).unwrap(),
            ZeroSetSpec::geometric(std::f64::consts::E).unwrap(),
            ZeroSetSpec::power(2.0, 1.0).unwrap(),
        ];
        for spec in specs {
            let f = Genus1Function::new(
                1,
                PolynomialSpec::from_reals([0.0, 1.0]).unwrap(),
                spec,
            )
            .unwrap();
            for _ in 0..40 {
                let z = Complex64::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
                if z.norm() < 1e-6 {
                    continue;
                }
                let tol = 10f64.powf(rng.gen_range(-10.0..-4.0));
                let got = match f.log_abs(z, tol) {
                    Ok(v) => v,
                    Err(Error::PoleOfLog(_)) => continue,
                    Err(e) => panic!("{}", e),
                };
                let oracle = log_abs_oracle(&f, z, got.j_used * 2 + 50);
                assert!(
                    (got.value - oracle).abs() <= got.tail_bound.max(1e-13),
                    "z={} tol={} diff={} tail={}",
                    z,
                    tol,
                    (got.value - oracle).abs(),
                    got.tail_bound
                );
                assert!(got.tail_bound < tol);
            }
        }
    }

    #[test]
    fn spec_string_round_trip() {
        let f = sample_f();
        let text = f.to_spec_string();
        let back = Genus1Function::from_spec_string(&text).unwrap();
        assert_eq!(back.m(), f.m());
        assert_eq!(back.q().coeffs(), f.q().coeffs());
        let parsed = Genus1Function::from_spec_string("m=2, q=0,0,1, zeros=power:2:1").unwrap();
        assert_eq!(parsed.m(), 2);
        assert_eq!(parsed.q().degree(), 2);
        assert!(matches!(parsed.zeros(), ZeroSetSpec::Power { .. }));
        assert!(Genus1Function::from_spec_string("m=1, zeros=geometric:2").is_err());
        assert!(Genus1Function::from_spec_string("m=1, q=0,1, zeros=geometric:2, bogus=1").is_err());
    }
}
