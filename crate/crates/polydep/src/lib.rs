//! Exact decision procedures and exhaustive censuses for multiplicative and
//! linear dependence among the roots of integer polynomials.
//!
//! The crate answers two families of questions:
//!
//! * *Decision*: given `f ∈ ℤ[X]`, are the distinct non-zero roots of `f`
//!   multiplicatively dependent (some `∏ αᵢ^{kᵢ} = 1` with integer exponents,
//!   not all zero)?  Are they linearly dependent (`Σ kᵢ αᵢ = 0`)?  Verdicts
//!   are three-valued — `Dependent` carries an exponent vector that
//!   re-verifies under an independent certifier, `Independent` is backed by a
//!   proof (closed form or an exact filter), and everything else is reported
//!   honestly as `Unknown` together with the exhausted search bound.
//! * *Census*: exhaustive counts of the polynomials of a fixed degree and
//!   bounded height whose roots are dependent, split into irreducible /
//!   reducible / monic / non-monic families and compared against asymptotic
//!   growth models.
//!
//! No verdict ever depends on unvalidated floating point: root enclosures are
//! certified disks, relation candidates found by lattice reduction are
//! confirmed with an algebraic-integer norm gap evaluated in outward-rounded
//! interval arithmetic, and all short-circuit classifications are exact
//! integer or rational computations.

pub mod arith;
pub mod census;
pub mod depend;
pub mod dyadic;
pub mod error;
pub mod factorize;
pub(crate) mod fastpath;
pub mod interval;
pub mod intpoly;
pub mod lattice;
pub mod modpoly;
pub mod qfield;
pub mod roots;
pub mod verify;
pub mod volume;

pub use error::{Error, Result};
pub use intpoly::IntPolynomial;
