//! The example surface with `p_g = q = 2`, `K² = 4`: its rings, the
//! cocycle data, the coefficient decision, the explicit 12×12 matrix `α̃`
//! and the end-to-end verification.

mod alpha;
mod cocycle;
mod coeffs;
pub mod data;
mod params;
mod rings;
mod verify;

pub use alpha::{build_alpha_tilde, contraction, groups, omega_block_check, random_symmetric, ExampleMatrix, OmegaBlockReport, SYMMETRY_TWIST};
pub use cocycle::{
    cocycle_check, eta_data, generation_check, generation_set, module_generators, pairs, CocycleData, CocycleReport, Family,
    GenerationReport, GenerationRow, TripleResidue, P_WEIGHTS,
};
pub use coeffs::{cj_decision, h0_fn_quotient, sigma_pair, CjDecision, CoeffVectorDoc, H0Fn};

pub use params::{ParamDoc, ParamSet};
pub use rings::{
    build_canonical_ring, build_curve_ring, build_theta_ring, cv, hyperplane_section_check, in_span, CanonicalRing, CurveRing,
    Projection, QuotientRing, ThetaRing, CANONICAL_VARS, CURVE_VARS, THETA_VARS,
};
pub use verify::{
    surface_invariants, verify_example, ChartIndependence, CheckStatus, NegativeControls, PresentationSummary, Timings, VerifyOptions,
    VerifyReport, DET_DEGREE, RING_TOP,
};

#[derive(Debug, thiserror::Error)]
pub enum SurfexError {
    #[error("parameters violate 1+lambda+mu+nu+epsilon = 0 (sum is {0})")]
    Constraint(String),
    #[error("characteristic 2 is not allowed")]
    Characteristic2,
    #[error("bad projection: {0}")]
    Projection(String),
    #[error("degree {0} is outside the computed range")]
    Degree(i64),
    #[error("data: {0}")]
    Data(String),
    #[error(transparent)]
    Ring(#[from] ring::RingError),
    #[error(transparent)]
    Gla(#[from] gla::GlaError),
    #[error(transparent)]
    Rescheck(#[from] rescheck::RescheckError),
    #[error(transparent)]
    Beilinson(#[from] beilinson::BeilinsonError),
}
