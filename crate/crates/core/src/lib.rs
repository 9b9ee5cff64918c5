//! Stern polynomials and the arithmetic facts around them.
//!
//! The Stern polynomials are defined by `B_0 = 0`, `B_1 = 1`,
//! `B_{2n} = t·B_n` and `B_{2n+1} = B_n + B_{n+1}`. This crate generates them
//! exactly, evaluates them over the rationals and over prime fields, and
//! carries a verification routine for every structural property checked by the
//! `stern` command-line harness:
//!
//! - [`roots`]: rational roots, the zero sets `R_a` and their density.
//! - [`automaton`]: the pair-state automaton over `F_p²` that computes
//!   `B_n(t) mod p`, with reachability, Cesàro and periodicity analysis.
//! - [`degrees`]: indices where consecutive polynomials share a degree.
//! - [`reciprocal`]: palindromic Stern polynomials and the `2^k − u_m`,
//!   `2^k − v_m` families.
//!
//! The crate is `no_std` and only needs `alloc`. IO, parallel sweeps and file
//! formats live in the `stern-cli` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[macro_use]
pub mod report;

pub mod automaton;
pub mod degrees;
pub mod descent;
mod error;
pub mod eval;
pub mod index;
pub mod poly;
pub mod rational;
pub mod reciprocal;
pub mod residue;
pub mod roots;
pub mod scaled;
pub mod words;

pub use error::Error;
pub use eval::{degree, eval_exact, eval_mod, stern_number};
pub use index::BitIndex;
pub use poly::{stern_pair, stern_poly, SternPoly};
pub use rational::ExactRational;
pub use report::{Outcome, Stat, VerificationReport};
pub use residue::Residue;

pub type Result<T, E = Error> = core::result::Result<T, E>;
