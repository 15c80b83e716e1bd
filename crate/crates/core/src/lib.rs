//! Modular group algebras over small finite fields.
//!
//! The crate covers exact linear algebra over `GF(p^m)`, permutation groups and
//! their group algebras with block decomposition, matrix representations with
//! Hom spaces, Krull-Schmidt decomposition, syzygies and Auslander-Reiten
//! translates, support tau-tilting pairs with their Hasse diagrams, and the
//! induction/restriction functors along normal subgroups.

pub mod algebra;
pub mod error;
pub mod field;
pub mod functors;
pub mod group;
pub mod matrix;
pub mod module;
pub mod session;
pub mod tilting;
pub mod verify;

pub use error::{Error, Result};
