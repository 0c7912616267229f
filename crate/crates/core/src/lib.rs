//! Analysis of primitive constant-length substitutions and the subshifts they
//! generate.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`subst`]: substitutions, iteration, languages, primitivity, the pair
//!   substitution on letter-pairs;
//! - [`reduction`]: one-to-one reduction and the finiteness decision;
//! - [`odometer`] and [`desub`]: points of the subshift given by their
//!   desubstitution data, the odometer factor map, the shift, fibers;
//! - [`pairs`]: coincidences, Li–Yorke existence and uncountability,
//!   exact classification of represented point pairs, witness constructions;
//! - [`orbit`]: a finite-horizon simulator used as an independent oracle;
//! - [`tower`]: the inverse-limit family `τ_n` with its factor maps.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod desub;
pub mod error;
pub mod odometer;
pub mod orbit;
pub mod pairs;
pub mod reduction;
pub mod subst;
pub mod tower;

pub use desub::{DesubstitutionStream, RepresentedPoint, StreamEntry, System, Window};
pub use error::{Error, Result};
pub use odometer::OdometerDigits;
pub use pairs::{CoincidenceClass, PairClass, PairVerdict};
pub use subst::{LengthProfile, Letter, Substitution, Word, DEFAULT_MAX_WORD};
