use gla::{GradedFree, GradedMatrix, Presentation};
use ring::{Field, Poly, Weights};
use serde::{Deserialize, Serialize};

use crate::{KoszulError, TwistedComplex};

/// `k`-subsets of `{0..m}` as bitmasks, in lexicographic order of the
/// sorted index tuples.
pub fn subsets(m: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << i));
        let Some(p) = (0..k).rev().find(|&p| idx[p] < m - k + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

pub fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// `(−1)^{#{i' ∈ I : i' < i}}`.
pub fn koszul_sign(mask: u64, i: usize) -> i64 {
    if (mask & ((1u64 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `d(dx_I) = Σ_{i∈I} (−1)^{#{i'∈I : i'<i}} x_i dx_{I∖i}` from the
/// `src` summands to the `tgt` summands.
fn koszul_block<F: Field>(w: &Weights, src: &[u64], tgt: &[u64], twist: i64) -> GradedMatrix<F> {
    let nv = w.len();
    let mut entries: Vec<Vec<Poly<F>>> = tgt
        .iter()
        .map(|&t| src.iter().map(|&s| Poly::zero_of_degree(nv, w.subset_weight(s) - w.subset_weight(t))).collect())
        .collect();
    for (c, &s) in src.iter().enumerate() {
        for i in members(s) {
            if let Some(r) = tgt.iter().position(|&t| t == s & !(1 << i)) {
                let x: Poly<F> = Poly::var(w, i);
                entries[r][c] = if koszul_sign(s, i) > 0 { x } else { x.neg_ref() };
            }
        }
    }
    let tw = |v: &[u64]| GradedFree::new(v.iter().map(|&m| twist + w.subset_weight(m)).collect());
    GradedMatrix::new(w.clone(), tw(src), tw(tgt), entries).expect("Koszul entries are homogeneous")
}

/// `K•(−l)` restricted to the summands `keep(position, I)`, kept in lex order.
/// Fails if the differential leaves the retained summands.
fn restricted<F: Field>(w: &Weights, l: i64, keep: impl Fn(i64, u64) -> bool) -> Result<TwistedComplex<F>, KoszulError> {
    let n1 = w.len();
    let positions: Vec<i64> = (-(n1 as i64)..=0).collect();
    let kept: Vec<Vec<u64>> =
        positions.iter().map(|&p| subsets(n1, (-p) as usize).into_iter().filter(|&m| keep(p, m)).collect()).collect();
    for (k, &p) in positions.iter().enumerate().take(positions.len() - 1) {
        for &s in &kept[k] {
            for i in members(s) {
                if !kept[k + 1].contains(&(s & !(1 << i))) {
                    return Err(KoszulError::NotSubcomplex(p));
                }
            }
        }
    }
    assemble(w, l, positions[0], kept, 1)
}

/// Complex with summand masks `kept[k]` at position `lo + k`, all twisted by
/// `l`, with Koszul differential times `sign`. Empty outer terms are trimmed.
fn assemble<F: Field>(w: &Weights, l: i64, lo: i64, mut kept: Vec<Vec<u64>>, sign: i64) -> Result<TwistedComplex<F>, KoszulError> {
    let mut lo = lo;
    while kept.first().is_some_and(Vec::is_empty) {
        kept.remove(0);
        lo += 1;
    }
    while kept.last().is_some_and(Vec::is_empty) {
        kept.pop();
    }
    let terms = kept.iter().map(|v| GradedFree::new(v.iter().map(|&m| l + w.subset_weight(m)).collect())).collect();
    let diffs = kept
        .windows(2)
        .map(|p| {
            let mut d = koszul_block::<F>(w, &p[0], &p[1], l);
            if sign < 0 {
                for e in d.entries.iter_mut().flatten() {
                    *e = e.neg_ref();
                }
            }
            d
        })
        .collect();
    let mut c = TwistedComplex::new(w.clone(), lo, terms, kept, diffs)?;
    c.twist = -l;
    Ok(c)
}

/// The Koszul complex `K^{−j} = ⊕_{|I|=j} P(−|w_I|)`, positions `−n−1..0`.
pub fn koszul<F: Field>(w: &Weights) -> TwistedComplex<F> {
    restricted(w, 0, |_, _| true).expect("K is a complex")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubcomplexKind {
    M,
    N,
    MPrime,
    NPrime,
    /// `O(−l)[l]`, the continuation of `N_(l)` to `0 ≤ l ≤ n`.
    TrivialN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubcomplexSpec {
    pub kind: SubcomplexKind,
    pub l: i64,
}

impl SubcomplexSpec {
    pub fn new(kind: SubcomplexKind, l: i64) -> Self {
        SubcomplexSpec { kind, l }
    }

    /// Admissible `l` (inclusive bounds).
    pub fn window(kind: SubcomplexKind, w: &Weights) -> (i64, i64) {
        let (n, s) = (w.n() as i64, w.total());
        match kind {
            SubcomplexKind::M | SubcomplexKind::MPrime => (1 - s, 0),
            SubcomplexKind::N | SubcomplexKind::NPrime => (n - s + 1, -1),
            SubcomplexKind::TrivialN => (0, n),
        }
    }
}

/// `M_(l)`, `N_(l)` as subcomplexes of `K•(−l)`, their quotients `M′`, `N′`
/// (with `0 → M → K(−l) → M′[1] → 0`), or `O(−l)[l]`.
pub fn build_subcomplex<F: Field>(w: &Weights, spec: SubcomplexSpec) -> Result<TwistedComplex<F>, KoszulError> {
    let (a, b) = SubcomplexSpec::window(spec.kind, w);
    let l = spec.l;
    if l < a || l > b {
        return Err(KoszulError::OutOfWindow { kind: spec.kind, l, lo: a, hi: b });
    }
    let in_m = |m: u64| w.subset_weight(m) <= -l;
    let in_n = |p: i64, m: u64| w.subset_weight(m) < -l - p;
    match spec.kind {
        SubcomplexKind::M => restricted(w, l, |_, m| in_m(m)),
        SubcomplexKind::N => restricted(w, l, in_n),
        SubcomplexKind::MPrime | SubcomplexKind::NPrime => {
            // M′^j = (K(−l)/M)^{j−1}; the shift negates the induced differential.
            let n1 = w.len();
            let kept: Vec<Vec<u64>> = (-(n1 as i64)..=0)
                .map(|p| {
                    subsets(n1, (-p) as usize)
                        .into_iter()
                        .filter(|&m| if spec.kind == SubcomplexKind::MPrime { !in_m(m) } else { !in_n(p, m) })
                        .collect()
                })
                .collect();
            assemble(w, l, 1 - n1 as i64, kept, -1)
        }
        SubcomplexKind::TrivialN => {
            let terms = vec![GradedFree::new(vec![l])];
            let mut c = TwistedComplex::new(w.clone(), -l, terms, vec![], vec![])?;
            c.twist = -l;
            Ok(c)
        }
    }
}

/// `Syz^j = ker d^{−j}`: presented by `d^{−j−2}` on `K^{−j−1}`, embedded in
/// `K^{−j}` by `d^{−j−1}`. `Syz^0 = P`.
pub fn syzygy_presentation<F: Field>(w: &Weights, j: usize) -> Result<(Presentation<F>, GradedMatrix<F>), KoszulError> {
    let n = w.n();
    if j > n {
        return Err(KoszulError::BadIndex(j as i64));
    }
    if j == 0 {
        let free = GradedFree::new(vec![0]);
        return Ok((Presentation::free(w, free.clone()), GradedMatrix::identity(w.clone(), free)));
    }
    let k = koszul::<F>(w);
    let pos = -(j as i64);
    let relations = k.diff(pos - 2);
    let embedding = k.diff(pos - 1);
    Ok((Presentation { generators: embedding.source.clone(), relations }, embedding))
}

/// Sign isomorphism `f^j(dx_I) = (−1)^{j(n+1)+Σ_{i∈I} i} dx_I` from `K•` to
/// `L = K•^∨(−|w|)[n+1]`, where the summand `(dx_{I^c})^*` of `L` is
/// identified with `dx_I`. Returned as one signed permutation matrix per
/// position, together with `L`.
pub fn self_duality_iso<F: Field>(w: &Weights) -> (TwistedComplex<F>, Vec<GradedMatrix<F>>) {
    let k = koszul::<F>(w);
    let n1 = w.len();
    let full = (1u64 << n1) - 1;
    let l = k.dual(-w.total()).shifted(n1 as i64);
    let nv = w.len();
    let mut maps = Vec::new();
    for pos in k.lo..=k.hi() {
        let src = k.labels_at(pos);
        let tgt = l.labels_at(pos);
        let mut entries = vec![vec![Poly::zero_of_degree(nv, 0); src.len()]; tgt.len()];
        for (c, &i_mask) in src.iter().enumerate() {
            let r = tgt.iter().position(|&m| m == full & !i_mask).expect("complement present");
            let e = pos * n1 as i64 + members(i_mask).sum::<usize>() as i64;
            let one = Poly::one(nv);
            entries[r][c] = if e.rem_euclid(2) == 0 { one } else { one.neg_ref() };
        }
        maps.push(GradedMatrix::new(w.clone(), k.term(pos), l.term(pos), entries).expect("degree-zero signs"));
    }
    (l, maps)
}

/// Whether the maps of [`self_duality_iso`] commute with the differentials.
pub fn self_duality_holds<F: Field>(w: &Weights) -> bool {
    let k = koszul::<F>(w);
    let (l, f) = self_duality_iso::<F>(w);
    (k.lo..k.hi()).all(|pos| {
        let i = (pos - k.lo) as usize;
        let lhs = f[i + 1].compose(&k.diff(pos)).unwrap();
        let rhs = l.diff(pos).compose(&f[i]).unwrap();
        lhs == rhs
    })
}
