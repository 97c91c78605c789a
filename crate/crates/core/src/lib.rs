//! Finite semigroup analysis.
//!
//! Semigroups are Cayley tables over the dense indices `0..n`. On top of the
//! table layer the crate provides congruence lattices and the Δ (chain) test,
//! principal ideals and J-classes, identity checking (weakly exponential,
//! medial, permutative, R-commutative), recognition of T1/T2R/T2L
//! decompositions with the T2R characterization conditions, the
//! classification of weakly exponential Δ-semigroups, and exhaustive
//! enumeration with canonical forms and a resumable T2R search.

pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod green;
pub mod io;
pub mod properties;
pub mod structure;
pub mod table;

pub use error::{Error, Result};
pub use table::{CayleyTable, ElemSet, MonoidView, PowerProfile};
