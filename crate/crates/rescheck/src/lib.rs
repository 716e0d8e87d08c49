//! Checks on symmetric resolutions `0 → G^∨(s) → G → F → 0`: symmetry,
//! minimality, chart trivialization, determinants, Fitting ideals, the rank
//! condition, annihilation and Euler characteristics.

mod annihilate;
mod bundle;
mod chart;
mod det;
mod euler;
mod rank;

pub use annihilate::{annihilation_check, annihilation_in_quotient, AnnihilationReport};
pub use bundle::{check_minimal, check_row_kernel, check_symmetric, BundleMap, MinimalityReport, MinimalityViolation, OmegaGroup, Side};
pub use chart::{chart_reduce, ChartMatrix, FrameVector};
pub use det::{det_chart, det_chart_bareiss, det_poly, det_summary, fitting_minors, fitting_minors_poly, interpolate_minors, DetSummary, FittingIdeal, Minor};
pub use euler::{chi_sheaf, euler_exactness, EulerReport, EulerRow};
pub use rank::{rank_condition, MembershipTest, RankMode, RankOptions, RankVerdict};

#[derive(Debug, thiserror::Error)]
pub enum RescheckError {
    #[error("summand mismatch: {0}")]
    SummandMismatch(String),
    #[error("bad Omega group: {0}")]
    Group(String),
    #[error("kernel relation fails for the group at {0}")]
    KernelRelation(usize),
    #[error("chart x{0} has weight {1}; charts need weight 1")]
    Chart(usize, u32),
    #[error("shape: {0}")]
    Shape(String),
    #[error("presentation not stabilized below {0}")]
    NotStabilized(i64),
    #[error("independent routes disagree: {0}")]
    Disagreement(String),
    #[error(transparent)]
    Ring(#[from] ring::RingError),
    #[error(transparent)]
    Gla(#[from] gla::GlaError),
}
