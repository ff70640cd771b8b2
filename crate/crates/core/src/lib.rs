//! Constructions of linear codes whose hull (the intersection of a code
//! with its dual) is trivial or one-dimensional, driven by multiplicative
//! character sums over finite fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] integer primality / factoring utilities,
//! * [`field`] exact arithmetic in the three-field tower used throughout,
//! * [`matrix`] dense linear algebra over those fields,
//! * [`charsum`] multiplicative and additive characters and their Gauss sums,
//! * [`construct`] the quasi-symmetric generator construction and its
//!   certificates,
//! * [`analysis`] hull, dual, minimum distance and weight distribution,
//! * [`bounds`] character-vector independence bounds and the distance
//!   conjecture scan,
//! * [`catalog`] the reference table of constructions reproduced by the CLI.

pub mod analysis;
pub mod arith;
pub mod bounds;
pub mod catalog;
pub mod charsum;
pub mod construct;
pub mod field;
pub mod matrix;

use thiserror::Error;

/// Unified error type for fallible library operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0}^{1} exceeds the supported range")]
    FieldTooLarge(u64, u32),
    #[error("modulus is not a monic degree-{expected} polynomial over F_{p}")]
    BadModulus { p: u64, expected: u32 },
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("{0} has no multiplicative inverse")]
    NotInvertible(String),
    #[error("admissibility violated: {0}")]
    Inadmissible(String),
    #[error("{0}")]
    InternalInconsistency(String),
    #[error("enumeration budget {budget} exhausted after {spent} steps")]
    BudgetExhausted { budget: u128, spent: u128 },
    #[error("field with {0} elements is too large for table-driven arithmetic")]
    AlphabetTooLarge(u128),
    #[error("search space of size {0} exceeds the enumeration guard")]
    SearchTooLarge(u128),
    #[error("{0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
