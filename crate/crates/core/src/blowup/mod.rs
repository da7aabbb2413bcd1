//! Interpolation at the torus unit `e = (1, 1)` of toric surfaces and
//! certificates for blow-ups of weighted projective planes.

mod certificate;
mod interp;
mod laurent;
mod lm;

pub use certificate::{
    blowup_certificate, blowup_certificate_with, forced_vertex_for_multiple, Certificate,
    CertificateKind, CurveData, ForcedVertexPayload, NefPayload, NegativeCurvePayload, Payload,
    DEFAULT_MULTIPLES, VERDICT,
};
pub use interp::{
    forced_vertex_coefficient, h0, vanishing_matrix, ForcedVertexOutcome, InterpolationProblem,
    VanishingSystem,
};
pub use laurent::{falling, order_at_e, LaurentPoly};
pub use lm::{lm_projection, lm_rays, mukai_predicate, LmReport, WeightAssignment};
