//! Rational polyhedral cones and lattice polytopes.

mod cone;
mod dd;
mod hilbert;
mod polytope;

pub use cone::{dual_cone, intersect, is_pointed, membership, relative_interior_point, Cone, Membership};
pub use hilbert::{hilbert_basis, hilbert_basis_in_lattice, MAX_SIMPLEX_DETERMINANT};
pub use polytope::{convex_hull_2d, lattice_points, Polytope};
