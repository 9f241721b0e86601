//! Free compact closed category on one generator: signed words, pairing diagrams with
//! circle counts, their composition and duals, the permutation subcategory, evaluation
//! into matrices, and property suites checking the laws.

pub mod algebra;
pub mod diagrams;
pub mod error;
pub mod evaluation;
pub mod fsm;
pub mod laws;

pub use algebra::{
    cir_formula, compose, dual_morphism, epsilon, eta, identity, morphism_from_json,
    morphism_to_json, symmetry, tensor_morphisms,
};
pub use diagrams::{
    enumerate_pairings, enumerate_pairings_bounded, DiagMorphism, Endpoint, ObjWord, Orientation,
    Pairing, Side, Strand,
};
pub use error::{Error, Result};
pub use evaluation::{evaluate, Semiring, TensorArray};
pub use fsm::{include, perm_compose, Permutation};
pub use laws::{run_suite, LawReport, SuiteId};
