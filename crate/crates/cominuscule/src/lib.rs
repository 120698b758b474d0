//! Combinatorics of totally non-negative cells in cominuscule Grassmannians.
//!
//! The totally non-negative part of a cominuscule Grassmannian `G/P` decomposes
//! into cells indexed by pairs `(x, w)` where `w` is a minimal coset
//! representative in `W^j` and `x ≤ w` in Bruhat order.  Concretely these pairs
//! are encoded by *Le-diagrams*: fillings of an order ideal of the cominuscule
//! poset with `0`s and `+`s whose `0`s spell a positive distinguished
//! subexpression (PDS).  This crate implements that dictionary end to end:
//!
//! * [`weyl`] — root systems for types `A`, `B`, `D`, `E6`, `E7`, Weyl group
//!   elements as permutations of roots, Bruhat order, reduced words, and the
//!   signed-permutation realizations of the hyperoctahedral and even-signed
//!   groups.
//! * [`poset`] — the cominuscule posets ("shapes"), their box labellings by
//!   simple generators, and enumeration of order ideals (one per `W^j`).
//! * [`diagram`] — `⊕`-diagrams (`0`/`+` fillings), subexpression values, the
//!   PDS test, and greedy Le-ification.
//! * [`pattern`] — forbidden-pattern characterizations of Le-diagrams for the
//!   classical families, checkable without any Weyl group computation.
//! * [`moves`] — local diagram moves ("Le-moves") that implement Le-ification
//!   as a terminating game, together with a root-theoretic verifier for each
//!   move template.
//! * [`decorated`] — decorated permutations of types `A` and `B` and the
//!   commuting triangle of bijections between cells, Le-diagrams, and
//!   decorated permutations; the partial order on cells.
//! * [`preference`] — preference functions, atomic preference functions, the
//!   zigzag bijection `α` with signed permutations, and the path-construction
//!   bijection between preference functions and Le-diagrams on the triangular
//!   grid.
//! * [`counting`] — exact polynomial counts of cells (`q`-analogues by number
//!   of `+`s) with independent brute-force censuses to check every formula.
//! * [`render`] — ASCII rendering shared by the CLI and the examples.
//! * [`cli`] — the `cominuscule` command-line interface.
//!
//! Each derived quantity is validated two ways wherever possible: a structural
//! algorithm (pattern, move game, bijection, recurrence) and an independent
//! brute-force oracle (exhaustive sweep over fillings, Weyl group enumeration,
//! or direct counting).  The integration test suite runs the full battery.

pub mod cli;
pub mod counting;
pub mod decorated;
pub mod diagram;
pub mod moves;
pub mod pattern;
pub mod poset;
pub mod preference;
pub mod render;
pub mod weyl;

use thiserror::Error;

/// Errors surfaced by fallible library entry points.
///
/// Core algebraic operations (multiplying elements of the same Weyl group,
/// applying a reflection to a root index) panic on misuse instead, since a
/// mismatch there is a programming error rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    /// The requested `(family, n, j)` combination is not a cominuscule pair
    /// supported by this crate.
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    /// Input that failed structural validation (malformed diagram text,
    /// a filling that does not fit its shape, a non-ideal row profile, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A value that is syntactically fine but violates a semantic
    /// precondition (e.g. `x ≰ w`, a non-atomic preference function where an
    /// atomic one is required).
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration would exceed the configured size cap.
    #[error("enumeration too large: {0}")]
    TooLarge(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
