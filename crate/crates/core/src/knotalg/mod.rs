//! Exact 2×2 matrix algebra for knot groups: Alexander polynomials from
//! monodromies and Seifert matrices, Markov triples and the trace map, Dehn
//! twist words, geodesic lengths and matrix checks of group presentations.

mod alexander;
mod markov;
mod matrix;
mod presentation;
mod ring;
mod twist;

use thiserror::Error;

pub use alexander::{alexander_from_seifert, monodromy_alexander, AlexanderReport};
pub use markov::{
    complex_geodesic_length, geodesic_length, markov_neighbors, markov_numbers, markov_tree, trace_map,
    trace_map_integral, traces_to_matrices, MarkovTriple, TraceChecks, TracePair,
};
pub use matrix::{int_matrix, EisensteinMatrix, IntMatrix, Matrix2, MatrixWire, RationalMatrix};
pub use presentation::{
    builtin_presentation, equivalent_modulo_involutions, figure_eight_generators, presentation_check,
    reduce_with_involutions, GroupWord, NamedPresentation, Presentation, PresentationReport, Relator,
    RelatorResult, BUILTIN_NAMES,
};
pub use ring::{Eisenstein, ExactRing};
pub use twist::{
    ghys_to_twist, ghys_u, ghys_v, ghys_word_eval, twist_identities, twist_word_eval, IdentityCheck, TwistGen,
    TwistWord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotAlgError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
}
