//! Exact computation of algebraic entropy on endomorphisms of finitely
//! generated abelian groups and cyclic torsion modules.
//!
//! The crate provides:
//!
//! - exact integer polynomial arithmetic, factorization, and certified
//!   Mahler measures ([`intpoly`]);
//! - finitely generated abelian groups as integer lattices with Hermite and
//!   Smith normal forms ([`abgroup`]);
//! - self-maps of such groups and of cyclic torsion modules, with exact
//!   subobject and quotient machinery ([`flows`]);
//! - torsion-theoretic radicals and the associated invariant towers
//!   ([`radicals`]);
//! - entropy computation in several flavours, trajectory estimators, Pinsker
//!   subgroups, and a randomized axiom-checking harness ([`entropy`]);
//! - a command-line front end ([`cli`]).
//!
//! Every numeric answer is either exact (integer / logarithm-of-integer
//! form) or carries a certified error bound; nothing is sampled from
//! floating-point heuristics without an enclosure argument.

#![forbid(unsafe_code)]
#![warn(missing_docs)]
#![allow(clippy::many_single_char_names)]

pub mod abgroup;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod flows;
pub mod intpoly;
pub mod radicals;

pub use entropy::{EntropyValue, ExactForm};
pub use error::{Error, Result};
pub use flows::{Flow, FlowPart};
pub use intpoly::IntPoly;
