//! Exact and numerical machinery for Newton–Okounkov bodies and the toric
//! degenerations they induce.
//!
//! The crate is `no_std` (with `alloc`). It covers:
//!
//! * [`algebra`]: exact rationals, (Laurent) polynomials, the composite order
//!   on `ℕ × ℤⁿ`, and the monomial and power-series valuation backends;
//! * [`okounkov`]: value semigroups, subduction, exact Newton–Okounkov bodies,
//!   Hilbert-function checks and quotient slicing;
//! * [`degeneration`]: the weight functional, the flat family `g̃_k(x, τ)` and
//!   its initial forms;
//! * [`embedding`]: the `V_d` monomial basis, embedded points, the `ℂ*`
//!   rescaling and the toric moment map;
//! * [`flow`]: the gradient-Hamiltonian flow and the integrable system it
//!   produces;
//! * [`catalog`]: self-verifying example bundles.
//!
//! File formats, the command-line front end and parallel batch drivers live in
//! the `okkit` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod catalog;
pub mod degeneration;
pub mod embedding;
mod error;
pub mod flow;
pub mod okounkov;

pub use error::{Error, Result};
