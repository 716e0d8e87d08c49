//! Sheaf cohomology on `gP(w)`: closed forms for `O(m)` and `Ω^j(l)`, a
//! brute-force `h^0` oracle, hypercohomology of line-bundle complexes and
//! cohomology of arbitrary graded modules through local duality.

mod closed;
mod hyper;
mod module;
mod table;

pub use closed::{
    chi_line, chi_line_complex, chi_omega, ext_vanishing, h0_omega_high, h0_omega_low, h0_oracle_omega, h_line, h_omega,
    verify_mondimfor, ExtCase, ExtVanishing,
};
pub use hyper::{hyper_line_complex, Hyper};
pub use module::{free_resolution, sheaf_cohomology_module, FreeResolution, ModuleCohomology, ModuleSheaf};
pub use table::{CohomologyTable, Entry, Provenance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomError {
    #[error("cohomological index {0} out of range")]
    Index(i64),
    #[error("closed form produced a negative value {0}")]
    Negative(i64),
    #[error("resolution did not stabilize within degree bound {0}; result not certified")]
    NotCertified(i64),
    #[error("spectral sequence may not degenerate (d_(n+1) from position {position})")]
    NotDegenerate { position: i64 },
    #[error("missing table entry {table}({i}, {l})")]
    Missing { table: &'static str, i: i64, l: i64 },
    #[error(transparent)]
    Koszul(#[from] koszul::KoszulError),
}
