//! Even sets of (-4)-classes on rational surfaces and the double covers
//! they define.
//!
//! The building blocks are the Picard lattice of a blown-up plane or
//! quadric ([`lattice`]), verification of even sets ([`evenset`]), the
//! numerical invariants and verdict for the double cover
//! ([`doublecover`]), and fibre configurations of elliptic fibrations
//! ([`fibers`]). [`catalog`] holds worked examples, [`config`] the text
//! file format and [`search`] a brute-force enumeration of even sets.

pub mod catalog;
pub mod cli;
pub mod config;
pub mod doublecover;
pub mod evenset;
pub mod fibers;
pub mod lattice;
pub mod quadform;
pub mod search;

pub use doublecover::{classify, CoverClassification, Regularity, Verdict};
pub use evenset::{verify_even_set, EvenSetReport};
pub use lattice::{Ambient, DivClass, SurfaceLattice};
