//! Nonlocal supremal energies of jump type on piecewise-constant functions.
//!
//! For a density `h` and a step function `u` on a bounded interval, the
//! energy is `H(u) = max h([u](s), [u](t))` over all ordered pairs of jump
//! points. `H` is lower semicontinuous for L¹ convergence exactly when `h`
//! is lower semicontinuous and *Cartesian submaximal*:
//!
//! ```text
//! h(w1 + w2, y) <= max { h(w1, y), h(w2, y), h(w1, w2) }
//! ```
//!
//! The crate provides the objects ([`StepFunction`], [`Supremand`],
//! [`GridSupremand`]), evaluation of the energies ([`functional`]), finite
//! checkers for the structural conditions ([`conditions`]) and a brute-force
//! laboratory that hunts for lower-semicontinuity failures using explicit
//! converging sequences ([`lab`]).

pub mod cli;
pub mod conditions;
mod error;
pub mod expr;
mod extreal;
pub mod functional;
pub mod lab;
pub mod pcfun;
pub mod supremand;

pub use conditions::{CheckReport, SumPolicy, TripleGrid, ViolationWitness, WitnessKind};
pub use error::{Error, Result};
pub use extreal::ExtReal;
pub use functional::EnergyValue;
pub use lab::{CrossCheckReport, LscWitness, SequenceRecipe};
pub use pcfun::{Interval, JumpProfile, StepFunction};
pub use supremand::{Density, Domain, GridSupremand, LocalDensity, Supremand};
