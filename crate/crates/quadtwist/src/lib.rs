//! Exact 2-isogeny descent and torsion computations for elliptic curves with
//! rational 2-torsion, aimed at quadratic-twist families of the modular curves
//! X₁(2,10) and X₁(2,12).
//!
//! The crate provides:
//! - exact integer/rational number theory ([`arith`]),
//! - polynomial root-finding over ℚ and real quadratic/imaginary quadratic
//!   fields ℚ(√d) ([`poly`]),
//! - curve models, point arithmetic over ℚ and ℚ(√d), 2-isogenies, division
//!   polynomials and torsion subgroups ([`curves`]),
//! - descent via 2-isogeny with rank bounds and congruence rank-zero
//!   certificates ([`descent`]),
//! - the modular-curve families and torsion-curve constructors ([`families`]),
//! - twisted root numbers and parity-based predictions ([`rootnum`]),
//! - congruence rule engines for torsion nonexistence ([`classify`]).

pub mod arith;
pub mod classify;
pub mod curves;
pub mod descent;
pub mod families;
pub mod poly;
pub mod rootnum;

pub use arith::{Integer, Rational};
