use std::collections::BTreeMap;

use cohom::{chi_line_complex, CohomologyTable, Entry};
use koszul::{build_subcomplex, SubcomplexKind, SubcomplexSpec};
use ring::{Field, Weights};
use serde::{Deserialize, Serialize};

use crate::{BeilinsonError, ResolutionTerms, SheafKind};

type Grid = BTreeMap<i64, BTreeMap<i64, Entry>>;

/// All `(i, entry)` with twist `l`, or a missing-entry error when there are none.
fn column(map: &Grid, table: &'static str, l: i64) -> Result<Vec<(i64, Entry)>, BeilinsonError> {
    let col: Vec<(i64, Entry)> = map.iter().filter_map(|(i, row)| row.get(&l).map(|e| (*i, *e))).collect();
    if col.is_empty() {
        return Err(BeilinsonError::Missing { table, i: 0, l });
    }
    Ok(col)
}

/// `X^i = ⊕_{−|w|<j≤0} O(j)^{hM(i, j)}`.
pub fn x_terms(w: &Weights, table: &CohomologyTable) -> Result<ResolutionTerms, BeilinsonError> {
    let mut x = ResolutionTerms::new("X");
    for j in 1 - w.total()..=0 {
        for (i, e) in column(&table.hm, "hM", j)? {
            x.add(i, SheafKind::line(j), e.value, Some(e.provenance));
        }
    }
    Ok(x)
}

/// `Y^i = ⊕_{n−|w|<j<0} O(j)^{hN(i, j)} ⊕ ⊕_{0≤j≤n} Ω^j(j)^{h^{i+j}(F(−j))}`,
/// in raw form (`Ω^0` and `Ω^n` are not rewritten as line bundles).
pub fn y_terms(w: &Weights, table: &CohomologyTable) -> Result<ResolutionTerms, BeilinsonError> {
    let mut y = ResolutionTerms::new("Y");
    let n = w.n() as i64;
    for j in n - w.total() + 1..0 {
        for (i, e) in column(&table.hn, "hN", j)? {
            y.add(i, SheafKind::line(j), e.value, Some(e.provenance));
        }
    }
    for j in 0..=n {
        for (k, e) in column(&table.h, "h", -j)? {
            y.add(k - j, SheafKind::omega(j as usize, j), e.value, Some(e.provenance));
        }
    }
    Ok(y)
}

/// The counts `(z^{−1}_j, z^0_j)` describing the line-bundle part of the
/// resolution of `O(2)`, for `n − |w| < j < 0`.
pub fn z_coeffs(w: &Weights, j: i64) -> Result<(u64, u64), BeilinsonError> {
    let (lo, hi) = (w.n() as i64 - w.total() + 1, -1);
    if j < lo || j > hi {
        return Err(BeilinsonError::Window { what: "z", j, lo, hi });
    }
    let target = 2 - j;
    let ws = w.as_slice();
    let z0 = ws.iter().filter(|&&x| x as i64 == target).count() as u64;
    let mut z1 = 0;
    for a in 0..ws.len() {
        for b in a + 1..ws.len() {
            if ws[a] > 1 && ws[b] > 1 && (ws[a] + ws[b]) as i64 == target {
                z1 += 1;
            }
        }
    }
    Ok((z1, z0))
}

/// The weights greater than 1; `N`-coefficients can be computed over them.
pub fn weight_reduction(w: &Weights) -> Vec<u32> {
    w.as_slice().iter().copied().filter(|&x| x > 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrthoKind {
    M,
    N,
}

/// `N_(l)`, continued by `O(−l)[l]` for `0 ≤ l ≤ n`.
fn n_complex<F: Field>(w: &Weights, l: i64) -> Result<koszul::TwistedComplex<F>, BeilinsonError> {
    let kind = if l >= 0 { SubcomplexKind::TrivialN } else { SubcomplexKind::N };
    Ok(build_subcomplex::<F>(w, SubcomplexSpec::new(kind, l))?)
}

/// `χ(M_(l)(j))`, or `χ(N_(l) ⊗ E_(j))` with `E_(j) = O(j)` for `j < 0` and
/// `Ω^j(j)` for `0 ≤ j ≤ n`. The `Ω` case expands `Ω^j(j) ≅ K^{≥−j}(j)[−j]`.
pub fn orthogonality_check<F: Field>(w: &Weights, kind: OrthoKind, l: i64, j: i64) -> Result<i64, BeilinsonError> {
    let (n, s) = (w.n() as i64, w.total());
    let (lo, hi) = match kind {
        OrthoKind::M => (1 - s, 0),
        OrthoKind::N => (n - s + 1, n),
    };
    for v in [l, j] {
        if v < lo || v > hi {
            return Err(BeilinsonError::Window { what: "orthogonality", j: v, lo, hi });
        }
    }
    if kind == OrthoKind::M {
        let c = build_subcomplex::<F>(w, SubcomplexSpec::new(SubcomplexKind::M, l))?;
        return Ok(chi_line_complex(&c, j));
    }
    let c = n_complex::<F>(w, l)?;
    if j < 0 {
        return Ok(chi_line_complex(&c, j));
    }
    let mut total = 0;
    for mask in 0u64..1 << w.len() {
        let k = mask.count_ones() as i64;
        if k <= j {
            let v = chi_line_complex(&c, j - w.subset_weight(mask));
            total += if (j - k) % 2 == 0 { v } else { -v };
        }
    }
    Ok(total)
}

/// `χ(N_(l) ⊗ G)` for `G = O(t)` from a function giving `χ(G(m))`.
pub(crate) fn chi_n_with<F: Field>(w: &Weights, l: i64, chi: impl Fn(i64) -> i64) -> Result<i64, BeilinsonError> {
    let c = n_complex::<F>(w, l)?;
    Ok(c.term_multisets()
        .into_iter()
        .map(|(pos, tw)| {
            let v: i64 = tw.iter().map(|a| chi(-a)).sum();
            if pos.rem_euclid(2) == 0 { v } else { -v }
        })
        .sum())
}
