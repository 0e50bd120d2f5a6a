//! Arithmetic, endomorphisms, and bounded classification for bicyclic monoid
//! extensions over ω-closed families of inductive subsets of ω.
//!
//! The monoid lives on triples `(i, j, F)` with `i, j ∈ ω` and `F` an
//! inductive subset of ω drawn from a fixed ω-closed family; multiplication
//! combines the bicyclic rule on pairs with shift-and-intersect on sets. The
//! crate provides exact element arithmetic, the named injective monoid
//! endomorphisms of the two- and three-set extensions, and a bounded
//! brute-force search that classifies all injective monoid endomorphisms
//! whose generator images fit inside a finite box, verifying the expected
//! classification exhaustively at small scale.

pub mod algebra;
pub mod classify;
pub mod endo;
pub mod family;
pub mod json;
pub mod text;

pub use algebra::{normalize_bicyclic_word, BicyclicElement, Element, InductiveSet, Nat, WordError};
pub use classify::{
    enumerate_monoid_endos, enumerate_without_pruning, verify_classification_f3,
    verify_composition_monoid, verify_fixed_point_criterion, verify_non_extension, Candidate,
    ClassificationReport, ClassifyError, F3Verification, NamedEndo, NonExtensionVerification,
    PruneRule, SearchBounds,
};
pub use endo::{
    EndoError, EndoSpec, GeneratorTable, Generators, HomomorphismWitness, InjectivityWitness,
};
pub use family::{AlgebraError, FamilyError, FamilyMember, OmegaClosedFamily};
pub use text::{parse_family_spec, ParseError};
