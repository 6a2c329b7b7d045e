//! Exact-arithmetic engine for partition algebras of finite groups.
//!
//! Given a concrete finite group (Cayley table, permutation generators, or
//! a builtin), this crate constructs good partitions of its conjugacy
//! classes, the integer structure-constant tensor of the resulting
//! partition algebra, exact character data lifted from a modular
//! eigendecomposition, the Frobenius and degree polynomials, generalized
//! commutator invariants, and normalizer-side comparisons of p'-degree
//! polynomials.
//!
//! All verdicts are computed in exact arithmetic (BigInt / BigRational /
//! cyclotomic integers); floating point appears only as a cross-check
//! witness.

pub mod arith;
pub mod cache;
pub mod characters;
pub mod class_algebra;
pub mod commutators;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod matrix;
pub mod mckay;
pub mod modp;
pub mod partition;
pub mod polynomials;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
