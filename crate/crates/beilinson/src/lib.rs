//! Term multisets of the two Beilinson-type resolutions `X•` (built from
//! `O(j)`, `−|w| < j ≤ 0`) and `Y•` (built from `O(j)`, `n−|w| < j < 0`, and
//! `Ω^j(j)`, `0 ≤ j ≤ n`) of a sheaf on `gP(w)`, read off a cohomology table,
//! together with the surface-specific bookkeeping for `φ_*O_S(2)` and `E(φ)`.

mod formulas;
mod split;
mod surface;
mod terms;

pub use formulas::{orthogonality_check, weight_reduction, x_terms, y_terms, z_coeffs, OrthoKind};
pub use split::infer_split_type;
pub use surface::{coeff_difference, fres_coefficients, surface_table, w0_terms, CoeffVector, E_of_phi, FresCorrection, InvariantData};
pub use terms::{BundleSum, ResolutionTerms, SheafKind, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BeilinsonError {
    #[error("missing table entry {table}({i}, {l})")]
    Missing { table: &'static str, i: i64, l: i64 },
    #[error("{what}: index {j} outside the window {lo}..={hi}")]
    Window { what: &'static str, j: i64, lo: i64, hi: i64 },
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("only defined for dim P(w) = 3, got {0}")]
    Dimension(usize),
    #[error("not split of line-bundle type on this window (residual {residual} at twist {twist})")]
    NotSplit { twist: i64, residual: i64 },
    #[error(transparent)]
    Cohom(#[from] cohom::CohomError),
    #[error(transparent)]
    Koszul(#[from] koszul::KoszulError),
}
