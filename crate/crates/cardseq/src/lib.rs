//! Desk-scale machinery for cardinal sequences of locally compact scattered
//! spaces: symbolic ordinals below κ⁺⁺ in Cantor normal form, the interval
//! tree over `[0,δ)` with its canonical ladders, basic and extended orbits,
//! block-tagged points, forcing conditions with a full (P1)–(P6) validator,
//! pairwise amalgamation of twin conditions, run-length cardinal sequences,
//! and a finite Cantor–Bendixson oracle.
//!
//! Everything in this crate is pure and allocation-only (`no_std` + `alloc`);
//! IO, file formats and the command line live in the companion `cardseq-cli`
//! crate.
//!
//! The canonical instantiation reads κ = ω₁ and κ⁺ = ω₂, so the three
//! symbolic atoms are written `w`, `w1`, `w2` in the text syntax.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod amalgam;
pub mod condition;
pub mod error;
pub mod finspace;
pub mod intervals;
pub mod oracle;
pub mod orbits;
pub mod ordinal;
pub mod sequence;
pub mod space;

pub use error::Error;
pub use intervals::{Interval, IntervalTree};
pub use orbits::OrdinalSet;
pub use ordinal::{CardinalAtom, Cofinality, Ordinal};
pub use space::{BlockId, Point};
