//! Weighted polynomial rings `K[x_0..x_n]` with `deg x_i = w_i`.

mod chart;
pub mod field;
mod monomial;
mod poly;
pub mod text;
mod weights;

pub use chart::{dehomogenize, rehomogenize, rehomogenize_min, ChartPoly};
pub use field::{Field, FieldSpec, Fp, Q, SUPPORTED_PRIMES};
pub use monomial::{default_names, hilbert_p, hilbert_series, monomials_of_degree, BasisCache, DegreeBasis, Monomial};
pub use poly::{poly_arith, Poly, PolyOp};
pub use weights::Weights;

/// Default prime for modular work.
pub type F65521 = Fp<65521>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("prime {0} is not supported")]
    UnsupportedPrime(u32),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("term of degree {found} in polynomial declared of degree {declared}")]
    NotHomogeneous { declared: i64, found: i64 },
    #[error("monomial arity {got}, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("chart index {0} has weight {1}; charts need weight 1")]
    BadChart(usize, u32),
    #[error("scale factor is not a constant")]
    NotConstant,
    #[error("denominator vanishes in the coefficient field")]
    BadDenominator,
    #[error("parse error: {0}")]
    Parse(String),
}
