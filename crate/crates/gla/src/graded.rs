use std::sync::Arc;

use ring::{hilbert_p, BasisCache, DegreeBasis, Field, Monomial, Poly, Weights};
use serde::{Deserialize, Serialize};

use crate::{GlaError, Mat};

/// `⊕_j P(−a_j)`; generator `j` sits in degree `a_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedFree {
    pub twists: Vec<i64>,
}

impl GradedFree {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFree { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn dim(&self, w: &Weights, d: i64) -> usize {
        self.twists.iter().map(|&a| hilbert_p(w, d - a) as usize).sum()
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.twists.iter().copied().min()
    }

    pub fn max_twist(&self) -> Option<i64> {
        self.twists.iter().copied().max()
    }
}

/// Coordinates of the degree-`d` piece of a free module: the blocks
/// `x^m e_j` with `m` running over the monomial basis of degree `d − a_j`.
#[derive(Clone, Debug)]
pub struct FreePiece {
    pub degree: i64,
    pub offsets: Vec<usize>,
    pub bases: Vec<Arc<DegreeBasis>>,
    pub dim: usize,
}

impl FreePiece {
    pub fn new(free: &GradedFree, d: i64, cache: &mut BasisCache) -> Self {
        let mut offsets = Vec::with_capacity(free.rank());
        let mut bases = Vec::with_capacity(free.rank());
        let mut dim = 0;
        for &a in &free.twists {
            let b = cache.get(d - a);
            offsets.push(dim);
            dim += b.len();
            bases.push(b);
        }
        FreePiece { degree: d, offsets, bases, dim }
    }

    /// Coordinate vector of a homogeneous element (one polynomial per
    /// generator, of degree `d − a_j`).
    pub fn to_vector<F: Field>(&self, elem: &[Poly<F>]) -> Result<Vec<F>, GlaError> {
        let mut v = vec![F::zero(); self.dim];
        for (j, p) in elem.iter().enumerate() {
            for (m, c) in p.terms() {
                let k = self.bases[j].index_of(m).ok_or(GlaError::WrongDegree { component: j, expected: self.bases[j].degree })?;
                v[self.offsets[j] + k] = c.clone();
            }
        }
        Ok(v)
    }

    pub fn to_element<F: Field>(&self, v: &[F], nvars: usize, w: &Weights) -> Vec<Poly<F>> {
        self.bases
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let terms = b
                    .monomials
                    .iter()
                    .enumerate()
                    .map(|(k, m)| (m.clone(), v[self.offsets[j] + k].clone()))
                    .filter(|(_, c)| !c.is_zero());
                Poly::from_terms(nvars, terms, Some(b.degree), w).expect("basis monomials are homogeneous")
            })
            .collect()
    }

    /// Generator index and monomial of a coordinate.
    pub fn locate(&self, idx: usize) -> (usize, &Monomial) {
        let j = match self.offsets.binary_search(&idx) {
            Ok(mut j) => {
                // Skip empty blocks sharing the offset.
                while j + 1 < self.offsets.len() && self.offsets[j + 1] == idx {
                    j += 1;
                }
                j
            }
            Err(j) => j - 1,
        };
        (j, &self.bases[j].monomials[idx - self.offsets[j]])
    }
}

/// Homogeneous map `⊕_j P(−a_j) → ⊕_i P(−b_i)`; entry `(i, j)` has degree
/// `a_j − b_i` (or is zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix<F: Field> {
    pub weights: Weights,
    pub source: GradedFree,
    pub target: GradedFree,
    /// Row-major: `entries[i][j]`.
    pub entries: Vec<Vec<Poly<F>>>,
}

impl<F: Field> GradedMatrix<F> {
    pub fn new(weights: Weights, source: GradedFree, target: GradedFree, entries: Vec<Vec<Poly<F>>>) -> Result<Self, GlaError> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(GlaError::Shape(format!(
                "entries are not {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        let nv = weights.len();
        let mut fixed = entries;
        for (i, row) in fixed.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let d = source.twists[j] - target.twists[i];
                if e.nvars() != nv {
                    return Err(GlaError::Shape(format!("entry ({i},{j}) has wrong arity")));
                }
                *e = e.clone().with_degree(d, &weights).map_err(|_| GlaError::NotHomogeneous { row: i, col: j, expected: d })?;
            }
        }
        Ok(GradedMatrix { weights, source, target, entries: fixed })
    }

    pub fn zero(weights: Weights, source: GradedFree, target: GradedFree) -> Self {
        let nv = weights.len();
        let entries = target
            .twists
            .iter()
            .map(|&b| source.twists.iter().map(|&a| Poly::zero_of_degree(nv, a - b)).collect())
            .collect();
        GradedMatrix { weights, source, target, entries }
    }

    pub fn identity(weights: Weights, free: GradedFree) -> Self {
        let mut m = Self::zero(weights, free.clone(), free);
        let nv = m.weights.len();
        for i in 0..m.target.rank() {
            m.entries[i][i] = Poly::one(nv);
        }
        m
    }

    /// Matrix with the given columns (each a target element) and their degrees.
    pub fn from_columns(weights: Weights, target: GradedFree, cols: Vec<(i64, Vec<Poly<F>>)>) -> Result<Self, GlaError> {
        let source = GradedFree::new(cols.iter().map(|(d, _)| *d).collect());
        let mut entries: Vec<Vec<Poly<F>>> = vec![Vec::with_capacity(cols.len()); target.rank()];
        for (_, c) in &cols {
            if c.len() != target.rank() {
                return Err(GlaError::Shape("column length differs from target rank".into()));
            }
            for (i, p) in c.iter().enumerate() {
                entries[i].push(p.clone());
            }
        }
        Self::new(weights, source, target, entries)
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn column(&self, j: usize) -> Vec<Poly<F>> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &GradedMatrix<F>) -> Result<GradedMatrix<F>, GlaError> {
        if self.source != o.target {
            return Err(GlaError::Shape("composition of incompatible maps".into()));
        }
        let nv = self.weights.len();
        let mut entries = Vec::with_capacity(self.rows());
        for i in 0..self.rows() {
            let mut row = Vec::with_capacity(o.cols());
            for j in 0..o.cols() {
                let mut acc = Poly::zero_of_degree(nv, o.source.twists[j] - self.target.twists[i]);
                for k in 0..self.cols() {
                    if self.entries[i][k].is_zero() || o.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &self.entries[i][k].mul_ref(&o.entries[k][j]);
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(GradedMatrix { weights: self.weights.clone(), source: o.source.clone(), target: self.target.clone(), entries })
    }

    /// Image of a source element.
    pub fn apply(&self, elem: &[Poly<F>]) -> Vec<Poly<F>> {
        (0..self.rows())
            .map(|i| {
                let mut acc: Option<Poly<F>> = None;
                for (j, e) in elem.iter().enumerate() {
                    let t = self.entries[i][j].mul_ref(e);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.try_add(&t).expect("homogeneous image"),
                    });
                }
                acc.unwrap_or_else(|| Poly::zero(self.weights.len()))
            })
            .collect()
    }

    /// The induced map `Hom(target, P(s)) → Hom(source, P(s))`, i.e. the
    /// transpose with `P(−b)` replaced by `P(−(−b − s))`.
    pub fn dual(&self, s: i64) -> GradedMatrix<F> {
        let source = GradedFree::new(self.target.twists.iter().map(|b| -b - s).collect());
        let target = GradedFree::new(self.source.twists.iter().map(|a| -a - s).collect());
        let entries = (0..self.cols()).map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect()).collect();
        GradedMatrix { weights: self.weights.clone(), source, target, entries }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix<F> {
        GradedMatrix {
            weights: self.weights.clone(),
            source: GradedFree::new(cols.iter().map(|&j| self.source.twists[j]).collect()),
            target: GradedFree::new(rows.iter().map(|&i| self.target.twists[i]).collect()),
            entries: rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
        }
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> GradedMatrix<G> {
        GradedMatrix {
            weights: self.weights.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|p| p.map_coeffs(f)).collect()).collect(),
        }
    }
}

/// Matrix of the degree-`d` component with respect to the monomial bases.
pub fn degree_piece<F: Field>(m: &GradedMatrix<F>, d: i64) -> Mat<F> {
    let mut cache = BasisCache::new(&m.weights);
    degree_piece_cached(m, d, &mut cache).0
}

/// As [`degree_piece`], also returning the source and target layouts.
pub fn degree_piece_cached<F: Field>(m: &GradedMatrix<F>, d: i64, cache: &mut BasisCache) -> (Mat<F>, FreePiece, FreePiece) {
    let src = FreePiece::new(&m.source, d, cache);
    let tgt = FreePiece::new(&m.target, d, cache);
    let mut out: Mat<F> = Mat::zeros(tgt.dim, src.dim);
    for j in 0..m.cols() {
        for (k, mono) in src.bases[j].monomials.iter().enumerate() {
            let col = src.offsets[j] + k;
            for i in 0..m.rows() {
                for (t, c) in m.entries[i][j].terms() {
                    let prod = t.mul(mono);
                    let r = tgt.bases[i].index_of(&prod).expect("homogeneous entry");
                    let v = out.get(tgt.offsets[i] + r, col).clone() + c;
                    out.set(tgt.offsets[i] + r, col, v);
                }
            }
        }
    }
    (out, src, tgt)
}

/// Rank of the degree-`d` piece and a kernel basis, as source elements.
pub fn rank_and_kernel<F: Field>(m: &GradedMatrix<F>, d: i64) -> (usize, Vec<Vec<Poly<F>>>) {
    let mut cache = BasisCache::new(&m.weights);
    let (mat, src, _) = degree_piece_cached(m, d, &mut cache);
    let (rank, ker) = mat.rank_and_kernel();
    let nv = m.weights.len();
    (rank, ker.iter().map(|v| src.to_element(v, nv, &m.weights)).collect())
}
