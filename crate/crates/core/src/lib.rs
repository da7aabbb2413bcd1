//! Exact combinatorial geometry of Cox rings.
//!
//! The crate works entirely over the integers and rationals. Its layers are:
//!
//! * [`linalg`]: integer and rational matrices, Smith and Hermite normal
//!   forms, saturated kernels and exact or multi-modular ranks;
//! * [`polyhedra`]: rational polyhedral cones (double description), lattice
//!   polytopes, lattice points and Hilbert bases;
//! * [`fan`]: fans as combinatorial toric varieties;
//! * [`divisors`]: class groups, divisor polytopes, positivity and section rings;
//! * [`chambers`]: effective and moving cones, Mori chambers and the
//!   Cox-ring test for graded polynomial rings;
//! * [`blowup`]: interpolation at the torus unit of toric surfaces and
//!   certificates that a nef divisor on the blow-up is not semiample.

pub mod blowup;
pub mod chambers;
pub mod divisors;
mod error;
pub mod fan;
pub mod linalg;
pub mod num;
pub mod polyhedra;

pub use error::{Error, Result};

pub use blowup::{
    blowup_certificate, forced_vertex_coefficient, h0, lm_projection, mukai_predicate,
    order_at_e, vanishing_matrix, Certificate, CertificateKind, CurveData, ForcedVertexOutcome,
    InterpolationProblem, LaurentPoly, LmReport,
};
pub use chambers::{
    effective_cone, enumerate_chambers, is_cox_grading, mori_chamber, moving_cone,
    semistable_supports, Chamber, CoxVerdict, CoxWitness, GradingSpec,
};
pub use divisors::{
    class_group, divisor_polytope, intersection_number_nef_surface, irrelevant_monomials,
    positivity, principal_divisor, section_ring_generators, veronese_generators, ClassGroup,
    Positivity, SectionGenerator, ToricDivisor,
};
pub use fan::{
    fan_predicates, normal_fan, normal_fan_with_ample, standard_fan, unimodular_equivalence,
    validate_fan, Fan, FanPredicates, FanViolation, StandardFan,
};
pub use linalg::{
    hermite_normal_form, integer_kernel_saturated, kernel_dimension, smith_normal_form,
    IntMatrix, RankMode, RatMatrix, SmithDecomposition,
};
pub use num::{Int, IntVec, Rat, RatVec};
pub use polyhedra::{
    convex_hull_2d, dual_cone, hilbert_basis, intersect, is_pointed, lattice_points, membership,
    relative_interior_point, Cone, Membership, Polytope,
};
