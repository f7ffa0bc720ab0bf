//! Exact computations with affine semigroups and their semigroup rings.
//!
//! Semigroups are finitely generated submonoids of `Z^d`. The crate computes
//! groups of differences, fibered sums (pushouts) of cancellative monoids and
//! their torsion-free quotients, Apéry elements and the unique-representation
//! test for flatness, flat base change of semigroup algebras, and the lattice
//! criterion for gluing.

pub mod algebra;
pub mod apery;
pub mod cli;
pub mod corpus;
pub mod doc;
pub mod error;
pub mod exactlat;
pub mod fibsum;
pub mod gluing;
pub mod semigroup;

pub use error::{Error, Result};
