//! p-adic theta operators on Serre-Tate expansions for unitary groups.
//!
//! The crate is organized bottom-up: [`padic`] residues, [`weight`]
//! combinatorics, [`schur`] symmetrizers, [`series`] in the Serre-Tate
//! variables, [`theta`] operators, [`restriction`] to block-diagonal
//! subgroups, and the [`family`] toy model of Eisenstein moments.

pub mod error;
pub mod family;
pub mod padic;
pub mod restriction;
pub mod schur;
pub mod series;
pub mod theta;
pub mod weight;

pub use error::{Error, Result};
