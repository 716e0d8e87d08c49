use ring::{BasisCache, Field, Poly, Weights};

use crate::graded::{degree_piece_cached, FreePiece};
use crate::{Echelon, GradedFree, GradedMatrix};

/// Outcome of a bounded syzygy or relation search.
#[derive(Clone, Debug)]
pub struct SyzygyResult<F: Field> {
    /// Columns are the generators, as elements of the searched module.
    pub generators: GradedMatrix<F>,
    pub stabilized: bool,
    pub bound: i64,
}

/// Number of degrees past the bound that are scanned for new generators; the
/// result counts as stabilized when none appear there.
pub fn stabilization_window(w: &Weights) -> i64 {
    w.max() as i64 + 1
}

/// Default search bound: largest source twist plus `2|w|`.
pub fn default_bound(m_source: &GradedFree, w: &Weights) -> i64 {
    m_source.max_twist().unwrap_or(0) + 2 * w.total()
}

/// Adds the degree-`d` multiples `x^m g` of the given generators to `span`.
pub(crate) fn add_multiples<F: Field>(
    span: &mut Echelon<F>,
    gens: &[(i64, Vec<Poly<F>>)],
    piece: &FreePiece,
    cache: &mut BasisCache,
) {
    for (e, g) in gens {
        let b = cache.get(piece.degree - e);
        for m in &b.monomials {
            let dm = b.degree;
            let shifted: Vec<Poly<F>> = g.iter().map(|p| p.mul_term(m, &F::one(), dm)).collect();
            let v = piece.to_vector(&shifted).expect("multiples stay homogeneous");
            span.push(v);
            if span.is_full() {
                return;
            }
        }
    }
}

/// Minimal homogeneous generators of `ker M` in degrees `≤ bound`.
///
/// In each degree the kernel basis (free columns in order) is scanned and a
/// vector becomes a new generator when it is independent of the multiples of
/// the generators found so far. Degrees `bound+1 ..= bound+Δ` are scanned
/// only to set `stabilized`.
pub fn syzygies_up_to<F: Field>(m: &GradedMatrix<F>, bound: i64) -> SyzygyResult<F> {
    let w = &m.weights;
    let nv = w.len();
    let mut cache = BasisCache::new(w);
    let mut gens: Vec<(i64, Vec<Poly<F>>)> = Vec::new();
    let start = m.source.min_twist().unwrap_or(bound + 1);
    let mut stabilized = true;
    for d in start..=bound + stabilization_window(w) {
        let (mat, src, _) = degree_piece_cached(m, d, &mut cache);
        if src.dim == 0 {
            continue;
        }
        let (_, ker) = mat.rank_and_kernel();
        if ker.is_empty() {
            continue;
        }
        let mut span = Echelon::new(src.dim);
        add_multiples(&mut span, &gens, &src, &mut cache);
        if span.rank() == ker.len() {
            continue;
        }
        if d > bound {
            stabilized = false;
            break;
        }
        for v in ker {
            if span.push(v.clone()) {
                gens.push((d, src.to_element(&v, nv, w)));
            }
        }
    }
    let generators = GradedMatrix::from_columns(w.clone(), m.source.clone(), gens).expect("kernel columns are homogeneous");
    SyzygyResult { generators, stabilized, bound }
}
