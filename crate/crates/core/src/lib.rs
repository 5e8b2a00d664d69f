//! Affine-invariant codes of length p^m and their group code structures.
//!
//! The crate constructs affine-invariant codes from defining sets, computes
//! the permutation-automorphism invariants a and b, classifies the regular
//! group structures a code carries (as left or two-sided group-algebra
//! ideals), and cross-validates everything against brute-force permutation
//! search at small lengths.

pub mod code;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod linalg;
pub mod perm;
pub mod groups;
pub mod semilinear;

pub use error::{Error, Result};
pub use field::{make_field, Compositum, FieldElement, FieldSpec};
pub use perm::Permutation;
