//! Analysis of "deep" zeros of linear combinations of holomorphic functions.
//!
//! The central object is the Wronskian `W(f_0, ..., f_n)` of a family of
//! holomorphic functions: a nontrivial combination `Σ λ_j f_j` can vanish to
//! order `n + 1` at a point only where `W` itself vanishes, so the zero set of
//! `W` is the exceptional set for all such deep zeros at once. This crate
//! provides
//!
//! * a compositional expression language for holomorphic functions together
//!   with exact jet (truncated Taylor) arithmetic for derivatives of any
//!   order ([`expr`], [`jet`]);
//! * Wronskian matrices, determinant identities, and rank-deficiency
//!   detection for the deep-zero coefficient system ([`wronskian`]);
//! * argument-principle zero localization with adaptive subdivision, used to
//!   compute exceptional sets ([`rootfind`]);
//! * pseudohyperbolic geometry of the unit disk: Stolz angles, sublevel sets
//!   of bounded functions, boundary-spectrum estimation ([`diskgeom`]);
//! * quantitative boundary decay: decay-order fitting, growth-class norms,
//!   Blaschke and Carleson boundary-set conditions ([`decay`]);
//! * a symbolic algebra of inner functions with finitely many Blaschke zeros
//!   and atomic singular masses ([`inner`]).
//!
//! The crate is `no_std` compatible (with `alloc`); all IO, file formats and
//! the command-line front end live in the companion `deepzero-cli` crate.
//!
//! Everything here is a pure function over immutable values. Numeric work
//! defaults to `f64`; the evaluation and identity-check paths are generic
//! over [`numeric::Real`] and can be promoted to the software double-double
//! scalar [`numeric::Dd`] when determinants of near-dependent families need
//! the head room.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]
// `!(x > 0.0)` is the NaN-rejecting spelling of the preconditions, and
// index loops mirror the matrix arithmetic they implement.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;



pub mod decay;
pub mod diskgeom;
pub mod error;
pub mod expr;

pub mod inner;
pub mod jet;
pub mod numeric;
pub mod quad;
pub mod rootfind;
pub mod rng;

pub mod wronskian;

pub use error::{Error, Result};
pub use expr::{AnalyticFn, Domain, FuncExpr};
pub use jet::Jet;

/// Complex double — the working scalar of the default numeric mode.
pub type C64 = num_complex::Complex64;
