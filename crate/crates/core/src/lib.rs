//! Sofic shifts presented by labeled graphs, their syntactic semigroups, and
//! bounded decision procedures for the existence of homomorphisms and factor
//! maps between them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of immutable data; file formats, the command-line front end and
//! timing live in the companion `sofic-cli` crate.

#![no_std]

extern crate alloc;

pub mod asymptotic;
pub mod blockmap;
pub mod catalog;
pub mod decision;
mod dfa;
pub mod error;
pub mod oracle;
pub mod periodic;
pub mod presentation;
pub mod pumping;
pub mod shift;
pub mod syntactic;
pub mod word;

pub use asymptotic::{AsymptoticTriple, EventuallyPeriodicPoint};
pub use blockmap::BlockMap;
pub use error::{Result, SoficError};
pub use presentation::{Edge, LabeledPresentation};
pub use shift::SoficShift;
pub use syntactic::{ClassId, ShannonGraphData, SyntacticSemigroup};
pub use word::{Symbol, Word};
