use std::collections::BTreeMap;

use cohom::{chi_line_complex, CohomologyTable, Provenance};
use koszul::{build_subcomplex, SubcomplexKind, SubcomplexSpec};
use ring::{hilbert_p, Weights, F65521};
use serde::{Deserialize, Serialize};

use crate::formulas::chi_n_with;
use crate::{z_coeffs, BeilinsonError, BundleSum, SheafKind};

/// Numerical invariants of a minimal surface of general type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantData {
    pub p_g: i64,
    pub q: i64,
    pub k2: i64,
    pub chi: i64,
}

impl InvariantData {
    pub fn new(p_g: i64, q: i64, k2: i64, chi: i64) -> Result<Self, BeilinsonError> {
        if p_g < 0 || q < 0 || k2 < 0 || chi < 0 {
            return Err(BeilinsonError::Inconsistent("invariants must be non-negative".into()));
        }
        if chi != 1 + p_g - q {
            return Err(BeilinsonError::Inconsistent(format!("chi = {chi} but 1 + p_g - q = {}", 1 + p_g - q)));
        }
        Ok(InvariantData { p_g, q, k2, chi })
    }

    /// `χ(ω^m) = χ + m(m−1)/2·K²` (Riemann–Roch).
    pub fn chi_power(&self, m: i64) -> i64 {
        self.chi + m * (m - 1) / 2 * self.k2
    }

    /// `h^i(S, ω^m)`.
    pub fn h_power(&self, i: usize, m: i64) -> u64 {
        let v = match i {
            0 => match m {
                m if m < 0 => 0,
                0 => 1,
                1 => self.p_g,
                m => self.chi_power(m),
            },
            1 if m == 0 || m == 1 => self.q,
            2 => return self.h_power(0, 1 - m),
            _ => 0,
        };
        v as u64
    }
}

fn c_window(w: &Weights) -> Result<std::ops::Range<i64>, BeilinsonError> {
    if w.len() != 4 {
        return Err(BeilinsonError::Dimension(w.n()));
    }
    Ok(4 - w.total()..0)
}

fn check_c_window(w: &Weights, j: i64) -> Result<(), BeilinsonError> {
    let r = c_window(w)?;
    if !r.contains(&j) {
        return Err(BeilinsonError::Window { what: "c", j, lo: r.start, hi: r.end - 1 });
    }
    Ok(())
}

/// Table of `F = φ_*O_S(2)` on `gP(w)`, `dim P(w) = 3`: `h^i(F(l)) = h^i(S, ω^{l+2})`.
/// With `y` given, also `hN(0, j) = y_j` and `hN(−1, 3−|w|−j) = y_j`, the only
/// nonzero `N`-coefficients of `F`.
pub fn surface_table(
    w: &Weights,
    inv: &InvariantData,
    twists: std::ops::RangeInclusive<i64>,
    y: Option<(&BTreeMap<i64, u64>, Provenance)>,
) -> Result<CohomologyTable, BeilinsonError> {
    let win = c_window(w)?;
    let mut t = CohomologyTable::new(w, "phi_*O_S(2)");
    for l in twists {
        for i in 0..=3 {
            t.set_h(i, l, inv.h_power(i as usize, l + 2), Provenance::ClosedForm);
        }
    }
    if let Some((y, prov)) = y {
        for j in win {
            let v = *y.get(&j).ok_or(BeilinsonError::Missing { table: "y", i: 0, l: j })?;
            t.set_hn(0, j, v, prov);
            t.set_hn(-1, 3 - w.total() - j, v, prov);
        }
    }
    Ok(t)
}

/// A case of the `−1` correction to `c_j`: it applies exactly when a certain
/// composite of complexes is nonzero, which is not decided here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FresCorrection {
    pub j: i64,
    pub weight_index: usize,
    pub value_if_composite_zero: u64,
    pub value_if_composite_nonzero: u64,
}

/// `c_j`, `k_j`, `y_j` on `3−|w| < j < 0`. `c` holds the uncorrected formula;
/// `undecided` lists the coefficients that may need the correction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffVector {
    pub c: BTreeMap<i64, u64>,
    pub k: BTreeMap<i64, u64>,
    pub y: BTreeMap<i64, u64>,
    pub undecided: Vec<FresCorrection>,
}

impl CoeffVector {
    /// A vector with only the `c_j` (absent ones are zero).
    pub fn from_c(c: BTreeMap<i64, u64>) -> Self {
        CoeffVector { c, ..Default::default() }
    }

    pub fn c(&self, j: i64) -> u64 {
        self.c.get(&j).copied().unwrap_or(0)
    }

    pub fn is_determined(&self) -> bool {
        self.undecided.is_empty()
    }
}

/// `c_j = y_j − z^0_j − z^{−1}_{3−|w|−j} + k_j + k_{3−|w|−j}`.
pub fn fres_coefficients(w: &Weights, y: &BTreeMap<i64, u64>, k: &BTreeMap<i64, u64>) -> Result<CoeffVector, BeilinsonError> {
    let win = c_window(w)?;
    let s = w.total();
    let get = |m: &BTreeMap<i64, u64>, name: &'static str, j: i64| {
        m.get(&j).copied().ok_or(BeilinsonError::Missing { table: name, i: 0, l: j })
    };
    let mut out = CoeffVector { y: y.clone(), k: k.clone(), ..Default::default() };
    for j in win {
        let partner = 3 - s - j;
        let (_, z0) = z_coeffs(w, j)?;
        let (z1, _) = z_coeffs(w, partner)?;
        let v = get(y, "y", j)? as i64 - z0 as i64 - z1 as i64 + get(k, "k", j)? as i64 + get(k, "k", partner)? as i64;
        let v = u64::try_from(v).map_err(|_| BeilinsonError::Inconsistent(format!("c_{j} = {v} < 0")))?;
        out.c.insert(j, v);
        for (i, &wi) in w.as_slice().iter().enumerate() {
            let wi = wi as i64;
            if s == 2 * wi - 1 && j == 2 - wi && get(k, "k", j)? == 1 {
                out.undecided.push(FresCorrection {
                    j,
                    weight_index: i,
                    value_if_composite_zero: v,
                    value_if_composite_nonzero: v.saturating_sub(1),
                });
            }
        }
    }
    Ok(out)
}

fn projection_counts(w: &Weights, inv: &InvariantData) -> Result<(u64, u64), BeilinsonError> {
    let (p1, p2) = (hilbert_p(w, 1) as i64, hilbert_p(w, 2) as i64);
    let a = inv.chi + inv.k2 - p2;
    let b = inv.p_g - p1;
    if a < 0 {
        return Err(BeilinsonError::Inconsistent(format!("chi + K^2 = {} < p_2 = {p2}", inv.chi + inv.k2)));
    }
    if b < 0 {
        return Err(BeilinsonError::Inconsistent(format!("p_g = {} < p_1 = {p1}", inv.p_g)));
    }
    Ok((a as u64, b as u64))
}

/// `W^0 = O(2) ⊕ O^{χ+K²−p_2} ⊕ Ω¹(1)^q ⊕ Ω²(2)^{p_g−p_1} ⊕ O(j)^{c_j}`.
pub fn w0_terms(w: &Weights, inv: &InvariantData, c: &CoeffVector) -> Result<BundleSum, BeilinsonError> {
    let win = c_window(w)?;
    let (a, b) = projection_counts(w, inv)?;
    let mut e = BundleSum::default();
    e.add(SheafKind::line(2), 1, None);
    e.add(SheafKind::line(0), a, None);
    e.add(SheafKind::omega(1, 1), inv.q as u64, None);
    e.add(SheafKind::omega(2, 2), b, None);
    for j in win {
        e.add(SheafKind::line(j), c.c(j), None);
    }
    Ok(e)
}

/// `E(φ) = O(−2)^{χ+K²−p_2} ⊕ Ω¹(−1)^q ⊕ (Ω²)^{p_g−p_1} ⊕ ⊕ O(j−2)^{c_j}`.
#[allow(non_snake_case)]
pub fn E_of_phi(w: &Weights, inv: &InvariantData, c: &CoeffVector) -> Result<BundleSum, BeilinsonError> {
    let win = c_window(w)?;
    for j in c.c.keys() {
        check_c_window(w, *j)?;
    }
    let (a, b) = projection_counts(w, inv)?;
    let mut e = BundleSum::default();
    e.add(SheafKind::line(-2), a, None);
    e.add(SheafKind::omega(1, -1), inv.q as u64, None);
    e.add(SheafKind::omega(2, 0), b, None);
    for j in win {
        e.add(SheafKind::line(j - 2), c.c(j), None);
    }
    Ok(e)
}

/// `c_j − c_{3−|w|−j} = χ(F ⊗ N_(j)) − χ(N_(j)(2)) + χ(N_(3−|w|−j)(2))`.
pub fn coeff_difference(w: &Weights, inv: &InvariantData, j: i64) -> Result<i64, BeilinsonError> {
    check_c_window(w, j)?;
    let partner = 3 - w.total() - j;
    let n_at = |l: i64| build_subcomplex::<F65521>(w, SubcomplexSpec::new(SubcomplexKind::N, l));
    let chi_f = chi_n_with::<F65521>(w, j, |m| inv.chi_power(m + 2))?;
    Ok(chi_f - chi_line_complex(&n_at(j)?, 2) + chi_line_complex(&n_at(partner)?, 2))
}
