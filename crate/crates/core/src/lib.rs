//! Numerical laboratory for non-hermitian, pseudo-hermitian Hamiltonians with
//! a position-dependent effective mass.
//!
//! The crate builds one-dimensional Hamiltonians from first-order generators
//! `η = μ(x) d/dx + iF(x)`, maps them between the variable-mass frame `x` and
//! the constant-mass frame `q` (with `dq/dx = M(x)`), discretizes every
//! operator on uniform grids, and computes and classifies their spectra.
//!
//! Module map:
//!
//! - [`numerics`]: grids, sampled complex fields, finite differences, quadrature.
//! - [`massmap`]: mass profiles, the point canonical transformation and pullbacks.
//! - [`models`]: generators, named potentials and their closed-form spectra.
//! - [`operators`]: banded discretizations, weighted adjoints, residual diagnostics.
//! - [`spectra`]: non-hermitian eigensolvers, shooting refinement, classification.
//! - [`dirac`]: the coupled two-component system and its self-consistent energies.
//! - [`sweep`]: parameter scans, run in parallel when the `parallel` feature is on.

pub mod dirac;
pub mod error;
pub mod massmap;
pub mod models;
pub mod numerics;
pub mod operators;
pub mod parallel;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Shorthand for building a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
