//! Computational toolkit for quandles: validated operation tables, quandles
//! built from groups, presentations with an equational derivation engine,
//! fundamental (n-)quandles of links, Todd–Coxeter coset enumeration, and
//! decision procedures backed by finite-quotient certificates.

pub mod catalog;
pub mod constructions;
pub mod derive;
pub mod fab;
pub mod freenq;
pub mod group;
pub mod hom;
pub mod inner;
pub mod links;
pub mod perm;
pub mod presentation;
pub mod quandle;
pub mod race;
pub mod realize;
pub mod toddcox;
pub mod words;

pub use perm::Permutation;
pub use quandle::{AxiomWitness, FiniteQuandle, QuandleError};
pub use words::{GroupWord, QWord};
