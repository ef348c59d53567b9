//! Exact rational geometry for down-closed convex bodies in the nonnegative
//! orthant and their relatives: dual bodies, signed decompositions, mixed
//! volumes, Cayley-style joins, self-dual-cone generalizations, and the
//! combinatorics of two-dimensional posets that realizes these bodies as
//! chain polytopes.
//!
//! Everything is computed over arbitrary-precision rationals; irrational
//! bounds are handled through certified interval enclosures. Suite runners
//! evaluate inequality and identity checks over seeded corpora and emit
//! machine-readable records.

pub mod antiblocking;
pub mod cbodies;
pub mod coneab;
pub mod error;
pub mod geom;
pub mod corpus;
pub mod exec;
pub mod interval;
pub mod jsonio;
pub mod linalg;
pub mod posets;
pub mod rat;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
