//! The annulus construction: dyadic annuli scaled by the Nagata constant of
//! the zero set, thickened covers of the zeros, admissible real intervals,
//! arithmetic patches, and the log-ratio certificate over the placed points.
//!
//! The output set carries growing arithmetic chains (dimension >= 1
//! behavior) while the image moduli |F(z_k)| grow at a certified ratio
//! Lambda > 1 past a starting index (dimension 0 behavior of the image).

mod certificate;
mod intervals;
mod patches;
mod schedule;

pub use certificate::{ratio_certificate, CaseTag, CertificateOutcome, PairDiagnostics, RatioCertificate};
pub use intervals::{admissible_intervals, thickened_real_blocks, AdmissibleIntervals, RealInterval};
pub use patches::{place_patches, PatchPlacement, PatchStat};
pub use schedule::{build_schedule, AnnulusSchedule};

use crate::error::{Error, Result};
use crate::maps::{Genus1Function, ZeroSetSpec};

/// How an interval must relate to the thickened blocks to be admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum AdmissibilityRule {
    /// Each block individually avoids the closure of one component of the
    /// interval's complement (blocks may choose different sides).
    PerBlock,
    /// One common component works for every block (all blocks on one side).
    CommonSide,
}

/// Parameters of the construction.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    /// Nagata constant of the zero set: blocks are c_A s-bounded and
    /// s-disjoint at every scale s.
    pub c_a: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub f: Genus1Function,
    /// Inclusive range of annulus indices to build.
    pub n_range: (u32, u32),
    pub admissibility: AdmissibilityRule,
}

impl ConstructionParams {
    pub fn new(
        c_a: f64,
        epsilon: f64,
        delta: f64,
        f: Genus1Function,
        n_range: (u32, u32),
    ) -> Result<Self> {
        if !(c_a > 1.0) {
            return Err(Error::Domain(format!("c_A must exceed 1, got {}", c_a)));
        }
        if !(epsilon > 0.0 && epsilon < 1e-2) {
            return Err(Error::Domain(format!("epsilon must lie in (0, 1e-2), got {}", epsilon)));
        }
        if !(delta > 0.0 && delta < c_a) {
            return Err(Error::Domain(format!("delta must lie in (0, c_A), got {}", delta)));
        }
        if n_range.0 < 1 || n_range.0 > n_range.1 {
            return Err(Error::Domain(format!("invalid annulus range {:?}", n_range)));
        }
        if let ZeroSetSpec::Geometric { lambda } = f.zeros() {
            let lemma_c = lambda / (lambda - 1.0);
            if c_a < lemma_c * (1.0 - 1e-12) {
                return Err(Error::Domain(format!(
                    "c_A = {} is below the geometric cover constant lambda/(lambda-1) = {}",
                    c_a, lemma_c
                )));
            }
        }
        Ok(ConstructionParams {
            c_a,
            epsilon,
            delta,
            f,
            n_range,
            admissibility: AdmissibilityRule::PerBlock,
        })
    }

    pub fn with_admissibility(mut self, rule: AdmissibilityRule) -> Self {
        self.admissibility = rule;
        self
    }

    pub fn zeros(&self) -> &ZeroSetSpec {
        self.f.zeros()
    }
}
