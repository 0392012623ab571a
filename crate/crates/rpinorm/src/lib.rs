//! Reparametrization-invariant norms of piecewise monotone functions.
//!
//! A function that is zero far to the left, eventually constant to the
//! right, and piecewise monotone in between is described up to monotone
//! reparametrization by its *critical profile*: the sequence of values at
//! the boundaries of its monotone runs. Everything in this crate operates
//! on that finite description.
//!
//! The crate provides:
//!
//! * [`profiles`]: piecewise linear functions, critical profiles,
//!   reparametrizations, and the canonicalization that links them.
//! * [`norms`]: the standard reparametrization-invariant norm associated
//!   with a weight sequence, evaluated by an order-constrained dynamic
//!   program, plus named weight families, classic norms, and combinators.
//! * [`oracle`]: independent cross-checks - brute-force enumeration of the
//!   dynamic program and an exact piecewise linear integral driven by
//!   concentrating reparametrizations.
//! * [`reconstruct`]: recovery of a critical profile from a black-box norm
//!   oracle, up to reparametrization and global sign.
//! * [`pseudodist`]: computable lower and upper estimates sandwiching the
//!   natural pseudo-distance between two functions.
//! * [`cli`]: the command layer behind the `rpinorm` binary.
//!
//! Run `cargo run --example norms` (or `spectrum`, `reconstruction`,
//! `compare`, `integral_oracle`) for guided tours of each capability.

#![forbid(unsafe_code)]

pub mod cli;
mod error;
pub mod norms;
pub mod oracle;
pub mod profiles;
pub mod pseudodist;
pub mod reconstruct;
pub mod sampling;

pub use error::Error;

/// Absolute tolerance used when two floating point values are considered
/// equal during canonicalization and validation.
pub const VALUE_EQ_TOL: f64 = 1e-12;

/// Default relative tolerance for iterative routines (spectrum
/// stabilization, derivative extraction). Overridable per call and, in the
/// CLI, through the `RPINORM_TOL` environment variable.
pub const DEFAULT_TOL: f64 = 1e-9;

pub type Result<T> = std::result::Result<T, Error>;
