//! Link invariants of braid closures.

pub mod alexander;
pub mod bracket;
pub mod burau;
pub mod modular;
pub mod report;
pub mod temperley_lieb;

use thiserror::Error;

pub use alexander::{alexander_poly, alexander_poly_from, alexander_poly_interpolated};
pub use bracket::{jones_state_sum, kauffman_bracket};
pub use burau::{burau_reduced_eval, burau_unreduced_eval};
pub use report::{
    equivalence_evidence, invariant_report, satellite_alexander_check, Caps, CheckVerdict,
    EquivalenceReport, Evidence, InvariantReport, SatelliteCheck,
};
pub use temperley_lieb::{jones_tl, jones_tl_capped};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("the Burau parameter t must be nonzero")]
    ZeroParameter,
    #[error("reduced Burau needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("need {needed} interpolation points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("{what} = {value} exceeds the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("determinant is not divisible by the strand factor")]
    NotDivisible,
    #[error("coefficient bound exceeds the prime table")]
    Overflow,
}
