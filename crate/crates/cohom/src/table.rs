use std::collections::BTreeMap;

use koszul::{build_subcomplex, SubcomplexKind, SubcomplexSpec};
use ring::{Field, Weights};
use serde::{Deserialize, Serialize};

use crate::{h_line, h_omega, hyper_line_complex, CohomError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Resolved,
    UserSupplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub value: u64,
    pub provenance: Provenance,
}

/// Cohomology of a fixed sheaf `F`: `h^i(F(l))` on a window of twists, and
/// optionally `hM(i, l) = h^i(F ⊗ M_(l))`, `hN(i, l) = h^i(F ⊗ N_(l))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub weights: Vec<u32>,
    pub label: String,
    pub h: BTreeMap<i64, BTreeMap<i64, Entry>>,
    #[serde(rename = "hM")]
    pub hm: BTreeMap<i64, BTreeMap<i64, Entry>>,
    #[serde(rename = "hN")]
    pub hn: BTreeMap<i64, BTreeMap<i64, Entry>>,
}

fn put(map: &mut BTreeMap<i64, BTreeMap<i64, Entry>>, i: i64, l: i64, e: Entry) {
    map.entry(i).or_default().insert(l, e);
}

fn get(map: &BTreeMap<i64, BTreeMap<i64, Entry>>, i: i64, l: i64) -> Option<u64> {
    map.get(&i).and_then(|r| r.get(&l)).map(|e| e.value)
}

impl CohomologyTable {
    pub fn new(w: &Weights, label: impl Into<String>) -> Self {
        CohomologyTable { weights: w.as_slice().to_vec(), label: label.into(), ..Default::default() }
    }

    pub fn weights(&self) -> Weights {
        Weights::of(&self.weights)
    }

    pub fn set_h(&mut self, i: i64, l: i64, value: u64, provenance: Provenance) {
        put(&mut self.h, i, l, Entry { value, provenance });
    }

    pub fn set_hm(&mut self, i: i64, l: i64, value: u64, provenance: Provenance) {
        put(&mut self.hm, i, l, Entry { value, provenance });
    }

    pub fn set_hn(&mut self, i: i64, l: i64, value: u64, provenance: Provenance) {
        put(&mut self.hn, i, l, Entry { value, provenance });
    }

    pub fn h(&self, i: i64, l: i64) -> Result<u64, CohomError> {
        get(&self.h, i, l).ok_or(CohomError::Missing { table: "h", i, l })
    }

    pub fn hm(&self, i: i64, l: i64) -> Result<u64, CohomError> {
        get(&self.hm, i, l).ok_or(CohomError::Missing { table: "hM", i, l })
    }

    pub fn hn(&self, i: i64, l: i64) -> Result<u64, CohomError> {
        get(&self.hn, i, l).ok_or(CohomError::Missing { table: "hN", i, l })
    }

    /// Table of `F = O(d)`: closed-form `h`, and `hM`/`hN` resolved from the
    /// hypercohomology spectral sequence on the whole M- and N-windows.
    pub fn line_bundle<F: Field>(w: &Weights, d: i64, twists: std::ops::RangeInclusive<i64>) -> Result<Self, CohomError> {
        let mut t = Self::new(w, format!("O({d})"));
        let n = w.n() as i64;
        for l in twists {
            for i in 0..=n {
                t.set_h(i, l, h_line(w, i as usize, d + l)?, Provenance::ClosedForm);
            }
        }
        for (kind, target) in [(SubcomplexKind::M, 0), (SubcomplexKind::N, 1)] {
            let (a, b) = SubcomplexSpec::window(kind, w);
            for l in a..=b {
                let c = build_subcomplex::<F>(w, SubcomplexSpec::new(kind, l))?;
                let hy = hyper_line_complex(&c, d)?;
                for i in c.lo..=c.hi() + n {
                    let v = hy.get(i);
                    if target == 0 {
                        t.set_hm(i, l, v, Provenance::Resolved);
                    } else {
                        t.set_hn(i, l, v, Provenance::Resolved);
                    }
                }
            }
        }
        Ok(t)
    }

    /// `h` part for `F = Ω^j(t)` from the closed formulas.
    pub fn omega(w: &Weights, j: i64, t: i64, twists: std::ops::RangeInclusive<i64>) -> Result<Self, CohomError> {
        let mut tab = Self::new(w, format!("Omega^{j}({t})"));
        for l in twists {
            for i in 0..=w.n() {
                tab.set_h(i as i64, l, h_omega(w, i, j, t + l)?, Provenance::ClosedForm);
            }
        }
        Ok(tab)
    }

    /// Positions `(i, l)` where `h(i, l)` and its Serre partner
    /// `h(n − i, −l − |w|)` for a sheaf with `F^∨ ≅ F` are both tabulated and
    /// differ. Only meaningful for self-dual `F`.
    pub fn serre_asymmetries(&self) -> Vec<(i64, i64)> {
        let w = self.weights();
        let (n, s) = (w.n() as i64, w.total());
        let mut out = Vec::new();
        for (&i, row) in &self.h {
            for (&l, e) in row {
                if let Some(v) = get(&self.h, n - i, -l - s) {
                    if v != e.value {
                        out.push((i, l));
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
