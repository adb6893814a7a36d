//! The annulus schedule: D_n = {4/(c_A-1) c_A^(n+2) <= |z| < 4/(c_A-1)
//! c_A^(n+3)}, scales s_n = c_A^n, and the index thresholds J_A, N_A, n_q.

use super::ConstructionParams;
use crate::error::{Error, Result};
use crate::maps::{radial_growth_constants, RadialGrowthConstants};
use serde::Serialize;

const MAX_TAIL_TERMS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AnnulusEntry {
    pub n: u32,
    pub inner: f64,
    pub outer: f64,
    pub s_n: f64,
}

/// Radii, scales and thresholds of the construction.
#[derive(Clone, Debug, Serialize)]
pub struct AnnulusSchedule {
    pub c_a: f64,
    pub entries: Vec<AnnulusEntry>,
    /// Least J with sum_{j > J+1} 1/|alpha_j| below the tail threshold.
    pub j_a: u64,
    /// Least n such that every zero in D_{>=n} has index above J_A + 1.
    pub n_a: u32,
    /// Annulus containing R0 (clamped to 1 when R0 lies below D_1).
    pub n_q: u32,
    /// Annuli strictly above max(n_q, N_A): where the proof's floors are
    /// guaranteed.
    pub guaranteed_from: u32,
    pub growth: RadialGrowthConstants,
    /// The right-hand side of the tail inequality defining J_A.
    pub tail_rhs: f64,
}

impl AnnulusSchedule {
    pub fn eta(&self) -> f64 {
        4.0 / (self.c_a - 1.0)
    }

    pub fn inner(&self, n: u32) -> f64 {
        self.eta() * self.c_a.powi(n as i32 + 2)
    }

    pub fn outer(&self, n: u32) -> f64 {
        self.eta() * self.c_a.powi(n as i32 + 3)
    }

    pub fn scale(&self, n: u32) -> f64 {
        self.c_a.powi(n as i32)
    }

    /// lambda = 1/c_A - 1/c_A^2, the annulus-separation constant in
    /// |alpha_j - z| >= lambda |alpha_j| for zeros two or more annuli out.
    pub fn separation(&self) -> f64 {
        1.0 / self.c_a - 1.0 / (self.c_a * self.c_a)
    }

    /// Annulus index of a positive radius, when it lies in some D_n with
    /// n >= 1.
    pub fn annulus_of(&self, r: f64) -> Option<u32> {
        if r < self.inner(1) {
            return None;
        }
        let guess = (r / self.eta()).ln() / self.c_a.ln() - 2.0;
        let mut n = guess.floor().max(1.0) as u32;
        while n > 1 && self.inner(n) > r {
            n -= 1;
        }
        while self.outer(n) <= r {
            n += 1;
        }
        (self.inner(n) <= r).then_some(n)
    }
}

/// Compute the schedule: the tail index J_A from the displayed tail
/// inequality, N_A from the zero enumeration, and n_q from the radial
/// growth threshold R0.
pub fn build_schedule(params: &ConstructionParams) -> Result<AnnulusSchedule> {
    let growth = radial_growth_constants(params.f.q())?;
    let d = params.f.q().degree() as f64;
    let a_d = params.f.q().leading().re;
    let c_a = params.c_a;
    let eps = params.epsilon;
    let zeros = params.zeros();

    let tail_rhs = eps * d * a_d / 16.0 * (c_a - 1.0) / (c_a * c_a * (c_a * c_a + eps));
    let mut j_a: u64 = 0;
    while zeros.tail_inverse_modulus(j_a + 1) > tail_rhs {
        j_a += 1;
        if j_a > MAX_TAIL_TERMS {
            return Err(Error::Capability(format!(
                "tail inequality not satisfiable within {} terms",
                MAX_TAIL_TERMS
            )));
        }
    }

    let mut schedule = AnnulusSchedule {
        c_a,
        entries: Vec::new(),
        j_a,
        n_a: 1,
        n_q: 1,
        guaranteed_from: 2,
        growth,
        tail_rhs,
    };

    // N_A: zeros with index <= J_A + 1 must lie below D_{N_A}.
    let boundary_index = j_a + 1;
    let n_a = match zeros.finite_len() {
        Some(len) if boundary_index > len => 1,
        _ => {
            let m = zeros.modulus(boundary_index);
            let mut n = 1u32;
            while schedule.inner(n) <= m {
                n += 1;
                if n > 10_000 {
                    return Err(Error::Capability("N_A exceeds the representable range".into()));
                }
            }
            n
        }
    };
    // n_q: least n with outer(n) > R0 (clamps to 1 when R0 is below D_1).
    let mut n_q = 1u32;
    while schedule.outer(n_q) <= growth.r0 {
        n_q += 1;
        if n_q > 10_000 {
            return Err(Error::Capability("n_q exceeds the representable range".into()));
        }
    }

    schedule.n_a = n_a;
    schedule.n_q = n_q;
    schedule.guaranteed_from = n_a.max(n_q) + 1;
    schedule.entries = (params.n_range.0..=params.n_range.1)
        .map(|n| AnnulusEntry {
            n,
            inner: schedule.inner(n),
            outer: schedule.outer(n),
            s_n: schedule.scale(n),
        })
        .collect();
    Ok(schedule)
}
