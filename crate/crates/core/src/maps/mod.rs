//! Evaluation machinery for entire functions: polynomials with radial
//! growth constants, genus-one canonical products evaluated in log space
//! with certified truncation tails, zero counting, exponential preimage
//! sequences, and cross-ratio utilities.

mod cross_ratio;
mod genus1;
mod picard;
mod polynomial;
mod zeros;

pub use cross_ratio::cross_ratio;
pub use genus1::{Genus1Function, LogAbsF};
pub use picard::{exp_preimage_sequence, ExpPreimage};
pub use polynomial::{radial_growth_constants, PolynomialSpec, RadialGrowthConstants};
pub use zeros::{counting_function, counting_sweep, ZeroSetSpec};
