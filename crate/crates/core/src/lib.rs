//! Propositional normal logic programs and set-attack argumentation
//! frameworks (SETAFs).
//!
//! The crate computes the five three-valued semantics of a program
//! (partial stable, well-founded, regular, stable, L-stable), the five
//! labelling semantics of a SETAF (complete, grounded, preferred, stable,
//! semi-stable), translates each formalism into the other, and normalises
//! any program into a redundancy-free atomic program (RFALP) through the
//! unfolding / tautology / positive-reduction / non-minimal-rule
//! transformations.
//!
//! Everything here is a pure function over immutable values and only needs
//! `alloc`.

#![no_std]

extern crate alloc;

pub mod atom;
pub mod error;
pub mod limits;
pub mod lp;
pub mod mappings;
pub mod semantics;
pub mod setaf;
pub mod transform;
pub mod translate;

mod bits;

pub use atom::{Atom, AtomSet};
pub use error::Error;
pub use limits::Limits;
pub use lp::{Interpretation, PositiveProgram, PositiveRule, Program, Rule, Truth};
pub use setaf::{Attack, Label, Labelling, Setaf};
