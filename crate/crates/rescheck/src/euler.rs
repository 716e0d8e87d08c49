use beilinson::{InvariantData, SheafKind};
use cohom::{chi_line, chi_omega};
use ring::Weights;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerRow {
    pub d: i64,
    pub lhs: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub exact: bool,
    pub rows: Vec<EulerRow>,
    pub mismatches: Vec<i64>,
}

pub fn chi_sheaf(w: &Weights, s: &SheafKind, d: i64) -> i64 {
    match *s {
        SheafKind::LineBundle { l } => chi_line(w, l + d),
        SheafKind::OmegaTwist { j, t } => chi_omega(w, j, t + d),
    }
}

/// For `0 → G^∨(−1−|w|) → G → φ_*O_S → 0` with `G` the given sum, the
/// alternating sum of Euler characteristics must be `χ(ω^d)`.
pub fn euler_exactness(w: &Weights, summands: &[(SheafKind, u64)], inv: &InvariantData, degrees: impl IntoIterator<Item = i64>) -> EulerReport {
    let s = -1 - w.total();
    let mut rows = Vec::new();
    for d in degrees {
        let mut lhs = 0;
        for (k, mult) in summands {
            let m = *mult as i64;
            lhs += m * (chi_sheaf(w, k, d) - chi_sheaf(w, &k.dual(w, s), d));
        }
        rows.push(EulerRow { d, lhs, expected: inv.chi_power(d) });
    }
    let mismatches: Vec<i64> = rows.iter().filter(|r| r.lhs != r.expected).map(|r| r.d).collect();
    EulerReport { exact: mismatches.is_empty(), rows, mismatches }
}
