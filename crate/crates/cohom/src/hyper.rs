use koszul::{check_exactness, TwistedComplex};
use ring::Field;
use serde::{Deserialize, Serialize};

use crate::CohomError;

/// `h^k(gP, C ⊗ O(d))` for positions `k` where it can be nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyper {
    pub values: Vec<(i64, u64)>,
}

impl Hyper {
    pub fn get(&self, k: i64) -> u64 {
        self.values.iter().find(|v| v.0 == k).map_or(0, |v| v.1)
    }
}

/// Hypercohomology of a bounded complex of sums of line bundles, twisted by
/// `O(d)`.
///
/// The first hypercohomology spectral sequence has `E_1^{p,q} = H^q(C^p(d))`,
/// which lives in rows `q = 0` (global sections, i.e. the degree-`d` piece of
/// the module complex) and `q = n` (Serre dual to the degree-`−d` piece of
/// `C^∨(−|w|)`). Its `E_2` page is computed exactly; the only further
/// differential is `d_{n+1} : E^{p,n} → E^{p+n+1,0}`, and the result is
/// returned only when that differential has zero source or target.
pub fn hyper_line_complex<F: Field>(c: &TwistedComplex<F>, d: i64) -> Result<Hyper, CohomError> {
    let w = &c.weights;
    let n = w.n() as i64;
    let row0 = check_exactness(&c.twisted(d), 0..=0);
    let rown = check_exactness(&c.dual(-w.total()).twisted(-d), 0..=0);
    let e0 = |p: i64| row0.dim(p, 0) as u64;
    // E_2^{p,n} is dual to H^{−p} of the dual complex.
    let en = |p: i64| rown.dim(-p, 0) as u64;
    for p in c.lo..=c.hi() {
        if en(p) > 0 && e0(p + n + 1) > 0 {
            return Err(CohomError::NotDegenerate { position: p });
        }
    }
    let mut values = Vec::new();
    for k in c.lo..=c.hi() + n {
        let v = e0(k) + en(k - n);
        if v > 0 {
            values.push((k, v));
        }
    }
    Ok(Hyper { values })
}
