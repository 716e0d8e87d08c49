//! The coefficients `c_j` of `E(φ)` from the two quotient dimensions.

use std::collections::BTreeMap;

use beilinson::{fres_coefficients, CoeffVector};
use gla::Mat;
use ring::{Field, Poly, Weights};
use serde::Serialize;

use crate::rings::{coords, cv, span_of, CanonicalRing, Projection};
use crate::SurfexError;

/// `aσ_0 + bσ_1 + σ_2` and `aσ_1 + bσ_2 + σ_3`.
pub fn sigma_pair<F: Field>(ring: &CanonicalRing<F>) -> [Poly<F>; 2] {
    let p = &ring.params;
    let s = |i| ring.var(cv::SIGMA + i);
    let k = |x: &F| Poly::constant(11, x.clone());
    [
        &(&(&k(&p.a) * &s(0)) + &(&k(&p.b) * &s(1))) + &s(2),
        &(&(&k(&p.a) * &s(1)) + &(&k(&p.b) * &s(2))) + &s(3),
    ]
}

/// `R_1R_2 + ⟨aσ_0+bσ_1+σ_2, aσ_1+bσ_2+σ_3⟩ ⊂ R_3`.
fn cocycle_span<F: Field>(ring: &CanonicalRing<F>) -> Vec<Poly<F>> {
    let w = &ring.ring.weights;
    let mut out = Vec::new();
    for x in [cv::XI, cv::THETA] {
        for m in ring.ring.gb.standard_monomials(2) {
            out.push(&ring.var(x) * &Poly::monomial(m, F::one(), 2));
        }
    }
    debug_assert!(out.iter().all(|p| p.is_homogeneous(w)));
    out.extend(sigma_pair(ring));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct H0Fn {
    /// `h^0(F(2) ⊗ N_(−1))`.
    pub n_minus1: u64,
    /// `h^0(F(2) ⊗ N_(−2))`.
    pub n_minus2: u64,
}

/// `1 + dim R_3/(R_1R_2 + ⟨…⟩)` and
/// `dim ⟨τ_0,τ_1⟩/⟨−k_0τ_0−k_1τ_1, (k_0b−k_1a)τ_0+k_0τ_1⟩`.
pub fn h0_fn_quotient<F: Field>(ring: &CanonicalRing<F>, proj: &Projection<F>) -> Result<H0Fn, SurfexError> {
    let (e, dim) = span_of(&ring.ring, &cocycle_span(ring), 3)?;
    let n_minus1 = 1 + (dim - e.rank()) as u64;
    let (a, b) = (&ring.params.a, &ring.params.b);
    let (k0, k1) = (proj.k0.clone(), proj.k1.clone());
    let m = Mat::from_rows(vec![vec![-k0.clone(), -k1.clone()], vec![k0.clone() * b - k1 * a, k0]]);
    Ok(H0Fn { n_minus1, n_minus2: 2 - m.rank() as u64 })
}

#[derive(Clone, Debug, Serialize)]
pub struct CjDecision {
    /// `(c_{−1}, c_{−2}, c_{−3})`.
    pub c: [u64; 3],
    /// Whether `ρ(x_3) ∈ R_1R_2 + ⟨…⟩`, which sets `k_{−1} = 1`.
    pub x3_in_span: bool,
    pub h0: H0Fn,
    pub coefficients: CoeffVectorDoc,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeffVectorDoc {
    pub c: BTreeMap<i64, u64>,
    pub y: BTreeMap<i64, u64>,
    pub k: BTreeMap<i64, u64>,
    pub determined: bool,
}

impl From<&CoeffVector> for CoeffVectorDoc {
    fn from(v: &CoeffVector) -> Self {
        CoeffVectorDoc { c: v.c.clone(), y: v.y.clone(), k: v.k.clone(), determined: v.is_determined() }
    }
}

/// `c_j = y_j − z^0_j − z^{−1}_{−4−j} + k_j + k_{−4−j}` with
/// `y = (h^0(F(2)⊗N_(j)))_j` and `k_{−1}` decided by span membership.
pub fn cj_decision<F: Field>(ring: &CanonicalRing<F>, proj: &Projection<F>) -> Result<(CjDecision, CoeffVector), SurfexError> {
    let h0 = h0_fn_quotient(ring, proj)?;
    let (e, _) = span_of(&ring.ring, &cocycle_span(ring), 3)?;
    let x3_in_span = e.contains(&coords(&ring.ring, &proj.x3, 3)?);
    let y = BTreeMap::from([(-1, h0.n_minus1), (-2, h0.n_minus2), (-3, 0)]);
    let k = BTreeMap::from([(-1, x3_in_span as u64), (-2, 0), (-3, 0)]);
    let v = fres_coefficients(&Weights::of(&[1, 1, 2, 3]), &y, &k)?;
    let dec = CjDecision { c: [v.c(-1), v.c(-2), v.c(-3)], x3_in_span, h0, coefficients: (&v).into() };
    Ok((dec, v))
}
