//! Acyclic toric quivers and the polyhedral invariants of their thin sincere
//! moduli: stability of subquivers, tightening, the cone of weights with its
//! chamber decomposition, and flow polytopes.
//!
//! All arithmetic is exact.

pub mod chambers;
pub mod error;
pub mod flow_polytope;
pub mod geometry;
pub mod quiver;
pub mod stability;

pub use error::{Error, Result};
