//! Exact rational convex geometry: linear algebra, integer kernels, cones in
//! double description and polytopes with lattice-point data.

pub mod cone;
mod dd;
pub mod lattice;
pub mod linalg;
pub mod polytope;

pub use cone::Cone;
pub use lattice::kernel_lattice_basis;
pub use linalg::{Int, IntVec, Rat, RatVec, RationalMatrix};
pub use polytope::{Halfspace, LatticeData, Polytope};
