use gla::{degree_piece_cached, GradedFree, GradedMatrix, GradedMatrixDoc};
use ring::{BasisCache, Field, FieldSpec, Weights};
use serde::{Deserialize, Serialize};

use crate::KoszulError;

/// Bounded complex of graded free modules, cohomologically indexed:
/// `d^j : C^j → C^{j+1}` for `lo ≤ j < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex<F: Field> {
    pub weights: Weights,
    pub lo: i64,
    pub terms: Vec<GradedFree>,
    /// Koszul index set (bitmask) of each summand, when the complex is cut
    /// out of `K•`; empty otherwise.
    pub labels: Vec<Vec<u64>>,
    pub diffs: Vec<GradedMatrix<F>>,
    /// Accumulated twist relative to the complex it was derived from.
    pub twist: i64,
}

impl<F: Field> TwistedComplex<F> {
    /// Checks shapes and `d ∘ d = 0` entrywise.
    pub fn new(
        weights: Weights,
        lo: i64,
        terms: Vec<GradedFree>,
        labels: Vec<Vec<u64>>,
        diffs: Vec<GradedMatrix<F>>,
    ) -> Result<Self, KoszulError> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(KoszulError::Shape(format!("{} terms but {} differentials", terms.len(), diffs.len())));
        }
        if !labels.is_empty() && (labels.len() != terms.len() || labels.iter().zip(&terms).any(|(l, t)| l.len() != t.rank())) {
            return Err(KoszulError::Shape("labels do not match terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source != terms[k] || d.target != terms[k + 1] {
                return Err(KoszulError::Shape(format!("differential at position {} has wrong shape", lo + k as i64)));
            }
        }
        for k in 1..diffs.len() {
            let dd = diffs[k].compose(&diffs[k - 1]).map_err(KoszulError::Gla)?;
            if !dd.is_zero() {
                return Err(KoszulError::NotComplex(lo + k as i64 - 1));
            }
        }
        Ok(TwistedComplex { weights, lo, terms, labels, diffs, twist: 0 })
    }

    /// Position of the last term.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, pos: i64) -> GradedFree {
        self.index(pos).map_or_else(|| GradedFree::new(vec![]), |k| self.terms[k].clone())
    }

    /// `d^pos`, or a zero map when it leaves the stored range.
    pub fn diff(&self, pos: i64) -> GradedMatrix<F> {
        match self.index(pos) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => GradedMatrix::zero(self.weights.clone(), self.term(pos), self.term(pos + 1)),
        }
    }

    pub fn labels_at(&self, pos: i64) -> &[u64] {
        match self.index(pos) {
            Some(k) if !self.labels.is_empty() => &self.labels[k],
            _ => &[],
        }
    }

    fn index(&self, pos: i64) -> Option<usize> {
        (pos >= self.lo && pos <= self.hi()).then(|| (pos - self.lo) as usize)
    }

    /// `C ⊗ O(t)`.
    pub fn twisted(&self, t: i64) -> Self {
        let shift = |f: &GradedFree| GradedFree::new(f.twists.iter().map(|a| a - t).collect());
        let mut c = self.clone();
        c.terms = self.terms.iter().map(shift).collect();
        for d in &mut c.diffs {
            d.source = shift(&d.source);
            d.target = shift(&d.target);
        }
        c.twist += t;
        c
    }

    /// `C[k]`: `C[k]^j = C^{j+k}`, differential multiplied by `(−1)^k`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut c = self.clone();
        c.lo -= k;
        if k % 2 != 0 {
            for d in &mut c.diffs {
                for e in d.entries.iter_mut().flatten() {
                    *e = e.neg_ref();
                }
            }
        }
        c
    }

    /// `Hom(C, O(s))`: `(C^∨)^j = Hom(C^{−j}, O(s))` with transposed
    /// differentials.
    pub fn dual(&self, s: i64) -> Self {
        let terms: Vec<GradedFree> =
            self.terms.iter().rev().map(|f| GradedFree::new(f.twists.iter().map(|a| -a - s).collect())).collect();
        let diffs = self.diffs.iter().rev().map(|d| d.dual(s)).collect();
        let labels = self.labels.iter().rev().cloned().collect();
        TwistedComplex { weights: self.weights.clone(), lo: -self.hi(), terms, labels, diffs, twist: self.twist - s }
    }

    /// Multiset of twists per position, positions ascending, empty terms dropped.
    pub fn term_multisets(&self) -> Vec<(i64, Vec<i64>)> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, t)| t.rank() > 0)
            .map(|(k, t)| {
                let mut v = t.twists.clone();
                v.sort();
                (self.lo + k as i64, v)
            })
            .collect()
    }

    pub fn to_doc(&self) -> ComplexDoc {
        ComplexDoc {
            version: gla::SCHEMA_VERSION,
            weights: self.weights.clone(),
            field: F::spec(),
            lo: self.lo,
            twist: self.twist,
            terms: self.terms.iter().map(|t| t.twists.clone()).collect(),
            differentials: self.diffs.iter().map(GradedMatrix::to_doc).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }
}

/// Alias matching the dual-complex operation on the complex type.
pub fn dualize<F: Field>(c: &TwistedComplex<F>, twist: i64) -> TwistedComplex<F> {
    c.dual(twist)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexDoc {
    pub version: u32,
    pub weights: Weights,
    pub field: FieldSpec,
    pub lo: i64,
    pub twist: i64,
    pub terms: Vec<Vec<i64>>,
    pub differentials: Vec<GradedMatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDim {
    pub position: i64,
    pub degree: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub degrees: (i64, i64),
    /// Nonzero homology only.
    pub homology: Vec<HomologyDim>,
    /// `Σ_j (−1)^j dim C^j_d` for each degree.
    pub euler: Vec<(i64, i64)>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.homology.is_empty()
    }

    pub fn dim(&self, position: i64, degree: i64) -> usize {
        self.homology.iter().find(|h| h.position == position && h.degree == degree).map_or(0, |h| h.dim)
    }
}

/// Homology dimensions `dim ker d^j_d − rank d^{j−1}_d` in the given degrees.
pub fn check_exactness<F: Field>(c: &TwistedComplex<F>, degrees: std::ops::RangeInclusive<i64>) -> ExactnessReport {
    let mut cache = BasisCache::new(&c.weights);
    let mut homology = Vec::new();
    let mut euler = Vec::new();
    let (dlo, dhi) = (*degrees.start(), *degrees.end());
    for d in degrees {
        let dims: Vec<usize> = c.terms.iter().map(|t| t.dim(&c.weights, d)).collect();
        let ranks: Vec<usize> = c.diffs.iter().map(|m| degree_piece_cached(m, d, &mut cache).0.rank()).collect();
        let mut chi = 0i64;
        for (k, &dim) in dims.iter().enumerate() {
            let out = ranks.get(k).copied().unwrap_or(0);
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            let h = dim - out - inc;
            let pos = c.lo + k as i64;
            chi += if pos.rem_euclid(2) == 0 { dim as i64 } else { -(dim as i64) };
            if h > 0 {
                homology.push(HomologyDim { position: pos, degree: d, dim: h });
            }
        }
        euler.push((d, chi));
    }
    ExactnessReport { degrees: (dlo, dhi), homology, euler }
}
