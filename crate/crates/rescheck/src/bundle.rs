use beilinson::SheafKind;
use gla::GradedMatrix;
use ring::{Field, Poly};
use serde::{Deserialize, Serialize};

use crate::RescheckError;

/// Which side of the lifted matrix a group of `n+1` rows or columns lives on.
///
/// A row group presents `Ω¹(t) ⊂ ⊕_k O(t − w_k)`; a column group presents
/// `Ω^{n−1}(t)` as the quotient of `⊕_k O(t − |w| + w_k)` by the Euler vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Rows,
    Cols,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaGroup {
    pub side: Side,
    pub start: usize,
    pub summand: SheafKind,
}

impl OmegaGroup {
    pub fn rows(start: usize, t: i64) -> Self {
        OmegaGroup { side: Side::Rows, start, summand: SheafKind::omega(1, t) }
    }

    /// Column group presenting `Ω^{n−1}(t)`; `n` is the dimension of the space.
    pub fn cols(start: usize, n: usize, t: i64) -> Self {
        OmegaGroup { side: Side::Cols, start, summand: SheafKind::omega(n - 1, t) }
    }

    pub fn range(&self, n: usize) -> std::ops::Range<usize> {
        self.start..self.start + n + 1
    }
}

/// A map of bundle sums, stored through its lift to the line bundles that
/// carry the Ω-summands. Rows and columns outside every group are line
/// bundle summands.
///
/// Twists: row `r` stands for the sheaf `O(row_twist(r))`, i.e. the target
/// free module has twist `−row_twist(r)`; likewise for columns.
#[derive(Clone, Debug)]
pub struct BundleMap<F: Field> {
    pub matrix: GradedMatrix<F>,
    pub groups: Vec<OmegaGroup>,
}

impl<F: Field> BundleMap<F> {
    pub fn new(matrix: GradedMatrix<F>, groups: Vec<OmegaGroup>) -> Result<Self, RescheckError> {
        let w = &matrix.weights;
        let n = w.n();
        let total = w.total();
        let mut seen_r = vec![false; matrix.rows()];
        let mut seen_c = vec![false; matrix.cols()];
        for g in &groups {
            let (len, seen) = match g.side {
                Side::Rows => (matrix.rows(), &mut seen_r),
                Side::Cols => (matrix.cols(), &mut seen_c),
            };
            if g.start + n + 1 > len || g.range(n).any(|k| seen[k]) {
                return Err(RescheckError::Group(format!("group at {} overlaps or overruns", g.start)));
            }
            g.range(n).for_each(|k| seen[k] = true);
            for (k, idx) in g.range(n).enumerate() {
                let wk = w.get(k) as i64;
                let (have, want) = match (g.side, g.summand) {
                    (Side::Rows, SheafKind::OmegaTwist { j: 1, t }) => (-matrix.target.twists[idx], t - wk),
                    (Side::Cols, SheafKind::OmegaTwist { j, t }) if j + 1 == n => (-matrix.source.twists[idx], t - total + wk),
                    _ => return Err(RescheckError::Group(format!("unsupported summand {}", g.summand))),
                };
                if have != want {
                    return Err(RescheckError::Group(format!("slot {idx} has twist {have}, {} needs {want}", g.summand)));
                }
            }
        }
        Ok(BundleMap { matrix, groups })
    }

    /// A map between sums of line bundles.
    pub fn lines(matrix: GradedMatrix<F>) -> Self {
        BundleMap { matrix, groups: vec![] }
    }

    pub fn row_twist(&self, r: usize) -> i64 {
        -self.matrix.target.twists[r]
    }

    pub fn col_twist(&self, c: usize) -> i64 {
        -self.matrix.source.twists[c]
    }

    fn group_at(&self, side: Side, idx: usize) -> Option<&OmegaGroup> {
        let n = self.matrix.weights.n();
        self.groups.iter().find(|g| g.side == side && g.range(n).contains(&idx))
    }

    fn summands(&self, side: Side) -> Vec<SheafKind> {
        let len = match side {
            Side::Rows => self.matrix.rows(),
            Side::Cols => self.matrix.cols(),
        };
        let mut out = Vec::new();
        for k in 0..len {
            match self.group_at(side, k) {
                Some(g) if g.start == k => out.push(g.summand),
                Some(_) => {}
                None => out.push(SheafKind::line(match side {
                    Side::Rows => self.row_twist(k),
                    Side::Cols => self.col_twist(k),
                })),
            }
        }
        out
    }

    pub fn target(&self) -> Vec<SheafKind> {
        self.summands(Side::Rows)
    }

    pub fn source(&self) -> Vec<SheafKind> {
        self.summands(Side::Cols)
    }

    /// The `s`-twisted transpose `α^∨(s)`.
    pub fn twisted_transpose(&self, s: i64) -> BundleMap<F> {
        let groups = self
            .groups
            .iter()
            .map(|g| match g.side {
                Side::Rows => OmegaGroup { side: Side::Cols, start: g.start, summand: g.summand.dual(&self.matrix.weights, s) },
                Side::Cols => OmegaGroup { side: Side::Rows, start: g.start, summand: g.summand.dual(&self.matrix.weights, s) },
            })
            .collect();
        BundleMap { matrix: self.matrix.dual(s), groups }
    }
}

/// `source = target^∨(twist)` summand by summand, and `α̃ = α̃ᵀ`.
pub fn check_symmetric<F: Field>(m: &BundleMap<F>, twist: i64) -> Result<bool, RescheckError> {
    let w = &m.matrix.weights;
    let tgt = m.target();
    let src = m.source();
    let dual: Vec<SheafKind> = tgt.iter().map(|s| s.dual(w, twist)).collect();
    if src != dual || m.matrix.rows() != m.matrix.cols() {
        return Err(RescheckError::SummandMismatch(format!(
            "source [{}] is not the {twist}-twisted dual of the target",
            src.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    let e = &m.matrix.entries;
    Ok((0..e.len()).all(|i| (0..i).all(|j| e[i][j] == e[j][i])))
}

/// `Σ_k x_k · (row or column start+k) = 0`.
pub fn check_row_kernel<F: Field>(m: &BundleMap<F>, g: &OmegaGroup) -> bool {
    let w = &m.matrix.weights;
    let n = w.n();
    let e = &m.matrix.entries;
    let (groups_len, len) = match g.side {
        Side::Rows => (m.matrix.rows(), m.matrix.cols()),
        Side::Cols => (m.matrix.cols(), m.matrix.rows()),
    };
    if g.start + n + 1 > groups_len {
        return false;
    }
    let get = |k: usize, j: usize| match g.side {
        Side::Rows => &e[g.start + k][j],
        Side::Cols => &e[j][g.start + k],
    };
    (0..len).all(|j| {
        let mut acc = Poly::zero(w.len());
        for k in 0..=n {
            let t = Poly::var(w, k).mul_ref(get(k, j));
            acc = acc.try_add(&t).expect("kernel sums are homogeneous");
        }
        acc.is_zero()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityViolation {
    pub row: usize,
    pub col: usize,
    pub summand: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub violations: Vec<MinimalityViolation>,
}

/// Flags nonzero constants joining equal summands: equal line bundles, or an
/// Ω-group of rows and an Ω-group of columns standing for the same sheaf.
pub fn check_minimal<F: Field>(m: &BundleMap<F>) -> MinimalityReport {
    let mut violations = Vec::new();
    let is_const = |p: &Poly<F>| !p.is_zero() && p.terms().all(|(mono, _)| mono.is_one());
    for r in 0..m.matrix.rows() {
        for c in 0..m.matrix.cols() {
            let e = &m.matrix.entries[r][c];
            if !is_const(e) {
                continue;
            }
            let rg = m.group_at(Side::Rows, r);
            let cg = m.group_at(Side::Cols, c);
            let same = match (rg, cg) {
                (None, None) => m.row_twist(r) == m.col_twist(c),
                (Some(a), Some(b)) => a.summand.normalized(&m.matrix.weights) == b.summand.normalized(&m.matrix.weights),
                _ => false,
            };
            if same {
                let summand = rg.map(|g| g.summand).unwrap_or(SheafKind::line(m.row_twist(r))).to_string();
                violations.push(MinimalityViolation { row: r, col: c, summand });
            }
        }
    }
    MinimalityReport { minimal: violations.is_empty(), violations }
}
