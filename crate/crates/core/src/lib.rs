//! Computational toolkit for parabolic contractions p̃ = r ⋉ mᵃ of simple
//! Lie algebras: the free semigroup of highest weights whose matrix
//! coefficients survive the contraction, the lower-bound formal character
//! built from its generators, and direct desk-scale verification against the
//! algebra of semi-invariants, highest-weight modules, and their filtrations.

pub mod charring;
pub mod chevalley;
pub mod error;
pub mod hwmod;
pub mod linalg;
pub mod orbits;
pub mod parse;
pub mod pipeline;
pub mod report;
pub mod rootsys;
pub mod selftest;
pub mod syinv;

pub use error::{Error, ErrorKind, Result};
