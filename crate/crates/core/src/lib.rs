//! Gaussian conditional independence relations on small ground sets.

pub mod axioms;
pub mod datasets;
pub mod enumeration;
pub mod error;
mod fast4;
pub mod geometry;
pub mod graph;
pub mod identities;
pub mod linalg;
pub mod poly;
pub mod relation;
pub mod report;

pub use error::{Error, Result};
pub use relation::{canonical_class, CanonicalForm, Couple, Permutation, Relation};
