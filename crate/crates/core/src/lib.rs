//! Autotopy groups of Latin squares computed from the cycle structure of
//! their rows.
//!
//! The entry points are [`autotopy_group`] for reduced squares and
//! [`autotopy_group_any`] for arbitrary ones. The [`solver`] module exposes
//! the interchangeable search strategies by name, and [`bounds`] collects
//! the closed-form upper bounds on the group order.

pub mod autotopy;
pub mod bounds;
mod error;
pub mod fixtures;
pub mod invariants;
pub mod jm;
pub mod latin;
pub mod perm;
pub mod solver;

pub use autotopy::{
    autotopy_group, autotopy_group_any, autotopy_group_brute, conjugate_group, theta,
    transformed_row, verify_autotopism, AutotopyGroup, CycleSearch,
};
pub use error::{Error, Result};
pub use invariants::{compute_invariants, CycleProfile, SquareInvariants};
pub use jm::{jm_random, jm_random_indexed};
pub use latin::{Isotopism, LatinSquare};
pub use perm::{CycleDecomposition, CycleStructure, Parity, Permutation};
