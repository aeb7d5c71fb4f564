//! Exact computational kernel for modular representation theory of small
//! finite groups: multiplication-table groups, dense linear algebra over
//! GF(p^m), group-algebra block theory, lower defect multiplicities, the
//! MeatAxe, vertices of indecomposable modules, and Cartan invariants.
//!
//! Everything is deterministic: the only randomness (MeatAxe element search,
//! equal-degree polynomial factorization) is driven by an explicit seed.

pub mod algebra;
pub mod blocks;
pub mod cartan;
pub mod error;
pub mod field;
pub mod group;
pub mod lowerdefect;
pub mod matrix;
pub mod meataxe;
pub mod named;
pub mod poly;
pub mod rep;
pub mod rng;
pub mod structure;
pub mod subgroup;
pub mod vertex;

pub use error::Error;
pub use field::{Fe, Field};
pub use group::FiniteGroup;
pub use matrix::{Mat, Subspace};
pub use subgroup::Subgroup;
