//! Coefficient arithmetic: bidegrees, the ring `M2 = H⋆(pt; F2)`, graded
//! modules built from cones and towers, and F2 linear algebra.

mod bidegree;
mod f2;
mod m2;
mod module;

pub use bidegree::{BiDegree, Region};
pub use f2::{matrix_rank_f2, BitMatrix};
pub use m2::{m2_dim, m2_mul, M2Basis, M2Element};
pub use module::{exterior_cones, module_dim, GradedModule, Orbit, Summand, SummandKind};
