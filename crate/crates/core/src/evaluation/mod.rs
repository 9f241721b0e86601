//! The matrix instance: diagrams evaluated as dense arrays over a commutative semiring.
//!
//! A `+` point becomes a `d`-dimensional space, a `-` point its dual, every strand a
//! Kronecker delta and every closed circle a factor of `d`. Composition of arrays is
//! index contraction, tensor is the outer product.

mod array;
mod duality;
pub mod linalg;
mod respect;
mod semiring;

pub use array::{
    array_compose, array_tensor, evaluate, evaluate_bounded, Leg, TensorArray, DEFAULT_MAX_LEGS,
    MAX_ENTRIES,
};
pub use duality::{dual_morphism_generic, DualityData, DualityTriple};
pub use respect::{
    check_invertnat, check_lemma_respect, respect_squares, respects, Deviation, InvertnatReport,
    RespectLemmaReport, RespectSquares,
};
pub use semiring::{parse_rational, rational_to_f64, Semiring, FLOAT_TOLERANCE};
