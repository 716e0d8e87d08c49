use std::collections::BTreeMap;

use ring::{hilbert_p, Weights};

use crate::BeilinsonError;

/// Recovers `F = ⊕ O(a)` from `l ↦ h^0(F(l))` on a window: the smallest `k`
/// with `h^0(F(k)) ≠ 0` forces `h^0(F(k))` copies of `O(−k)`, whose sections
/// are removed before repeating. Returns the twists `a`, descending.
pub fn infer_split_type(h0: &BTreeMap<i64, u64>, w: &Weights) -> Result<Vec<i64>, BeilinsonError> {
    let mut rest: BTreeMap<i64, i64> = h0.iter().map(|(l, v)| (*l, *v as i64)).collect();
    let mut twists = Vec::new();
    while let Some((&k, &c)) = rest.iter().find(|(_, v)| **v != 0) {
        for (l, v) in rest.iter_mut() {
            *v -= c * hilbert_p(w, l - k) as i64;
            if *v < 0 {
                return Err(BeilinsonError::NotSplit { twist: *l, residual: *v });
            }
        }
        twists.extend(std::iter::repeat(-k).take(c as usize));
    }
    twists.sort_unstable_by(|a, b| b.cmp(a));
    Ok(twists)
}
