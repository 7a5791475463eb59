//! Search tools for working with incomplete or unverified tables: quotient
//! fusions, power maps, LLL on class-function lattices, degree matching and
//! table automorphisms.

mod automorphisms;
mod degrees;
mod fusions;
mod lll;
mod powermaps;

pub use automorphisms::{
    equivalence_classes, table_automorphisms, AutomorphismGroup, TableAutomorphism,
};
pub use degrees::{decompose_by_degrees, DegreeError, MAX_NORM};
pub use fusions::{quotient_fusion_candidates, ProbePair};
pub use lll::{determinant, is_lll_reduced, lll_reduce, LatticeBasis, LllError, LllResult};
pub use powermaps::{powermap_candidates, powermap_class_candidates};
