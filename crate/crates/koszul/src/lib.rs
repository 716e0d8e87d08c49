//! Koszul complex of `(x_0, …, x_n)` over `P(w)` and the truncated
//! subcomplexes feeding the Beilinson-type resolutions.

mod complex;
mod kos;

pub use complex::{check_exactness, dualize, ComplexDoc, ExactnessReport, HomologyDim, TwistedComplex};
pub use kos::{
    build_subcomplex, koszul, koszul_sign, members, self_duality_holds, self_duality_iso, subsets, syzygy_presentation,
    SubcomplexKind, SubcomplexSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoszulError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("d∘d ≠ 0 at position {0}")]
    NotComplex(i64),
    #[error("differential leaves the retained summands at position {0}")]
    NotSubcomplex(i64),
    #[error("{kind:?} needs {lo} ≤ l ≤ {hi}, got {l}")]
    OutOfWindow { kind: SubcomplexKind, l: i64, lo: i64, hi: i64 },
    #[error("index {0} out of range")]
    BadIndex(i64),
    #[error(transparent)]
    Gla(#[from] gla::GlaError),
}
