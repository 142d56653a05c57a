//! Duality data for linear codes under poset metrics: order-ideal
//! equivalence relations and their complement-induced duals, ideal-class
//! weight distributions, the integer transform matrices that carry a
//! code's distribution to its dual's, a decision procedure for when a
//! relation admits such a transform, and structural poset classifiers —
//! all in exact arithmetic, with brute-force oracles for every closed
//! form.
//!
//! The layers, bottom up:
//!
//! - [`gf`] — arithmetic in F_{p^m}, the trace map, exact root-of-unity
//!   sums for additive characters.
//! - [`poset`] — posets on {1,...,n}, order ideals, duality,
//!   automorphisms, induced-subposet isomorphism, classifiers.
//! - [`relations`] — partitions of the ideal family (by cardinality, by
//!   automorphism orbits, by isomorphism, or custom) and their duals.
//! - [`codes`] — generator matrices, dual codes, poset weights, spheres
//!   and ideal-class weight distributions.
//! - [`macwilliams`] — the closed-form sphere character sums, the P/Q
//!   class matrices, the duality checker, identity verification and the
//!   reciprocity identities.
//! - [`oracle`] — slow, obviously-correct reference implementations used
//!   by the test suite to pin every closed form to direct enumeration.

pub mod codes;
pub mod error;
pub mod gf;
pub mod macwilliams;
pub mod oracle;
pub mod poset;
pub mod relations;

pub use error::{Error, Result};
pub use gf::{CycSum, FieldSpec};
pub use poset::{OrderIdeal, Perm, Poset};
pub use relations::{IdealPartition, PartitionKind};
