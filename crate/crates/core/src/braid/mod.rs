//! Braid words, closure combinatorics, transverse invariants and Alexander
//! polynomials.

mod burau;
mod laurent;
mod search;
mod transverse;
mod word;

use thiserror::Error;

pub use burau::{alexander_from_braid, reduced_burau, reduced_burau_letter};
pub use laurent::{determinant, LaurentPolynomial};
pub use search::{exchange_reduce, replay, Move, ReductionResult};
pub use transverse::{transverse_invariants, transversality_margin, SampledCurve, TransverseInvariants};
pub use word::{torus_braid, BraidWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("invalid braid parameter: {0}")]
    Parameter(String),
    #[error("braid domain error: {0}")]
    Domain(String),
    #[error("internal braid arithmetic failure: {0}")]
    Internal(String),
}

/// Free reduction; exported under the operation name used by the CLI.
pub fn free_reduce(b: &BraidWord) -> BraidWord {
    b.free_reduce()
}

pub fn closure_components(b: &BraidWord) -> usize {
    b.closure_components()
}

pub fn destabilize(b: &BraidWord, sign: i8) -> Option<BraidWord> {
    b.destabilize(sign)
}
