use gla::GradedMatrix;
use ring::{dehomogenize, ChartPoly, Field, Weights};
use serde::{Deserialize, Serialize};

use crate::bundle::{check_row_kernel, BundleMap, Side};
use crate::RescheckError;

/// One basis vector of a chart frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameVector {
    /// The generator of a line bundle summand `O(t)`.
    Line { index: usize, twist: i64 },
    /// `f_k = e_k − (x_k/x_i) e_i` inside the Ω-group starting at `start`.
    Omega { start: usize, k: usize, summand: String },
}

/// Square matrix over the chart `D(x_i)`.
///
/// `homogeneous` is the matrix before setting `x_i = 1`: entry `(r, c)` has
/// weighted degree `row_twists[r] − col_twists[c]`, so every minor has a
/// degree predicted by the twists.
#[derive(Clone, Debug)]
pub struct ChartMatrix<F: Field> {
    pub chart: usize,
    pub entries: Vec<Vec<ChartPoly<F>>>,
    pub homogeneous: GradedMatrix<F>,
    pub row_frame: Vec<FrameVector>,
    pub col_frame: Vec<FrameVector>,
}

impl<F: Field> ChartMatrix<F> {
    pub fn weights(&self) -> &Weights {
        &self.homogeneous.weights
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn row_twists(&self) -> Vec<i64> {
        self.homogeneous.target.twists.iter().map(|t| -t).collect()
    }

    pub fn col_twists(&self) -> Vec<i64> {
        self.homogeneous.source.twists.iter().map(|t| -t).collect()
    }

    /// Weighted degree of the homogeneous minor on the given rows and columns.
    pub fn minor_degree(&self, rows: &[usize], cols: &[usize]) -> i64 {
        let rt = self.row_twists();
        let ct = self.col_twists();
        rows.iter().map(|&r| rt[r]).sum::<i64>() - cols.iter().map(|&c| ct[c]).sum::<i64>()
    }

    /// Chart matrix of an arbitrary square homogeneous matrix of line bundles.
    pub fn from_graded(m: &GradedMatrix<F>, chart: usize) -> Result<Self, RescheckError> {
        if m.rows() != m.cols() {
            return Err(RescheckError::Shape(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let entries = m
            .entries
            .iter()
            .map(|r| r.iter().map(|p| dehomogenize(p, chart, &m.weights)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let row_frame = (0..m.rows()).map(|r| FrameVector::Line { index: r, twist: -m.target.twists[r] }).collect();
        let col_frame = (0..m.cols()).map(|c| FrameVector::Line { index: c, twist: -m.source.twists[c] }).collect();
        Ok(ChartMatrix { chart, entries, homogeneous: m.clone(), row_frame, col_frame })
    }
}

/// Trivializes every Ω-summand on `D(x_i)` and dehomogenizes.
///
/// For a row group, a kernel vector `v` (`Σ x_k v_k = 0`) equals
/// `Σ_{k≠i} v_k f_k` on the chart, so its frame coordinates are the rows
/// `k ≠ i`. Dually a column group is free on the classes of `e_k`, `k ≠ i`.
/// Hence the chart matrix is the lift with slot `i` of each group deleted.
pub fn chart_reduce<F: Field>(m: &BundleMap<F>, chart: usize) -> Result<ChartMatrix<F>, RescheckError> {
    let w = &m.matrix.weights;
    if chart >= w.len() || w.get(chart) != 1 {
        return Err(RescheckError::Chart(chart, w.get(chart.min(w.len() - 1))));
    }
    let n = w.n();
    for g in &m.groups {
        if !check_row_kernel(m, g) {
            return Err(RescheckError::KernelRelation(g.start));
        }
    }
    let mut rows = Vec::new();
    let mut row_frame = Vec::new();
    let mut cols = Vec::new();
    let mut col_frame = Vec::new();
    for (side, len, keep, frame) in [
        (Side::Rows, m.matrix.rows(), &mut rows, &mut row_frame),
        (Side::Cols, m.matrix.cols(), &mut cols, &mut col_frame),
    ] {
        for idx in 0..len {
            let group = m.groups.iter().find(|g| g.side == side && g.range(n).contains(&idx));
            match group {
                Some(g) if idx - g.start == chart => {}
                Some(g) => {
                    keep.push(idx);
                    frame.push(FrameVector::Omega { start: g.start, k: idx - g.start, summand: g.summand.to_string() });
                }
                None => {
                    keep.push(idx);
                    let twist = match side {
                        Side::Rows => m.row_twist(idx),
                        Side::Cols => m.col_twist(idx),
                    };
                    frame.push(FrameVector::Line { index: idx, twist });
                }
            }
        }
    }
    if rows.len() != cols.len() {
        return Err(RescheckError::Shape(format!("chart matrix would be {}x{}", rows.len(), cols.len())));
    }
    let sub = m.matrix.submatrix(&rows, &cols);
    let mut out = ChartMatrix::from_graded(&sub, chart)?;
    out.row_frame = row_frame;
    out.col_frame = col_frame;
    Ok(out)
}
