//! Objects and total pairings: signed words, strands between boundary points, and the
//! morphism data `(pairing, circles)`.
//!
//! Endpoints are addressed directly by side and 1-based position in the domain or codomain
//! word. A strand joining two points on the same side requires opposite orientations; a
//! strand running from domain to codomain requires equal ones.

mod enumerate;
mod object;
mod pairing;

pub use enumerate::{enumerate_pairings, enumerate_pairings_bounded, DEFAULT_MAX_POINTS};
pub use object::{dual_object, parse_object, tensor_objects, ObjWord, Orientation};
pub use pairing::{
    canonical_form, classify_sections, validate_pairing, DiagMorphism, Endpoint, Pairing,
    SectionCounts, Side, Strand, StrandKind, ValidationReport, Violation,
};
