//! Connexive logics C, CnK, CnCK and CnCK_R.
//!
//! The crate covers formula syntax, finite bi-valuational Kripke models and
//! their evaluation, bounded countermodel search, a Hilbert-style proof
//! checker with a builder for deriving proofs mechanically, the translations
//! between the modal and conditional languages, and a harness classifying
//! connectives against the connexivity taxonomy.
//!
//! Everything here is `no_std` with `alloc`; file formats, timing and the
//! command line live in the `cnx` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod eval;
pub mod harness;
pub mod logic;
pub mod model;
pub mod proof;
pub mod search;
pub mod syntax;
pub mod transform;
mod worldset;

#[cfg(test)]
mod testgen;

#[cfg(test)]
mod properties;

pub use eval::{biextension, check_consecution, sat, Consecution, EvalError, Sign};
pub use logic::Logic;
pub use model::{BiSet, FrameClass, KripkeModel, ModelKind, PointedModel};
pub use syntax::{parse, render, Formula, LanguageTag};
pub use worldset::{WorldSet, MAX_WORLDS};
