//! Costas arrays over finite fields.
//!
//! This crate constructs Golomb and Welch Costas arrays from finite-field
//! data, verifies the Costas property, measures parity populations of
//! dots, projects subfield subarrays, enumerates all Costas arrays at
//! small orders, and cross-validates the parity predictions against
//! independently computed imaginary-quadratic class numbers.
//!
//! The modules mirror the moving parts:
//!
//! - [`field`]: exact arithmetic in GF(p^f) with exp/log tables.
//! - [`arrays`]: permutation arrays, the Costas verifier, parity censuses,
//!   and dihedral transforms.
//! - [`constructions`]: the Golomb and Welch generators, predicted
//!   censuses, subfield projection, and the even-q gap spectrum.
//! - [`residues`]: quadratic-residue bookkeeping and h(-p) by two
//!   independent routes.
//! - [`enumeration`]: exhaustive backtracking enumeration and the parity
//!   histogram of all Costas arrays of one order.
//! - [`sweeps`]: every invariant suite as a named strategy behind the
//!   [`sweeps::Sweep`] trait, selectable at runtime.

pub mod arrays;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod residues;
pub mod sweeps;

pub use arrays::{CostasVerdict, CostasWitness, ParityCensus, PermutationArray};
pub use error::{Error, Result};
pub use field::{FieldContext, FieldDescriptor, FieldElement};
