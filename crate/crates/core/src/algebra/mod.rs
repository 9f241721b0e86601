//! Categorical structure on diagrams: identities, braiding, cups and caps, composition
//! by path tracing, tensor product and the dual of a morphism.
//!
//! Composition is applicative: `compose(h, g)` applies `g` first. Closed loops formed in
//! the middle word are counted by following strands, not by the section-count formula in
//! [`cir_formula`], which is kept as a diagnostic.

mod compose;
mod json;
mod structure;

pub use compose::{cir_formula, compose, trace_composition, CompositionTrace};
pub use json::{morphism_from_json, morphism_from_value, morphism_to_json, morphism_to_value};
pub use structure::{dual_morphism, epsilon, eta, identity, symmetry, tensor_morphisms};
