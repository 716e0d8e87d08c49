//! The 12×12 matrix `α̃: G^∨(−8) → G`, `G = O ⊕ O(−2) ⊕ O(−3)² ⊕ Ω¹(−1)²`,
//! lifted to line bundles.

use gla::{GradedFree, GradedMatrix};
use rescheck::{BundleMap, OmegaGroup};
use ring::{Field, Monomial, Poly, Weights};
use serde::Serialize;

use crate::data::{self, header_ints};
use crate::{ParamSet, SurfexError};

pub const SYMMETRY_TWIST: i64 = -8;

#[derive(Clone, Debug)]
pub struct ExampleMatrix<F: Field> {
    pub map: BundleMap<F>,
    /// `p_2, p_4, q_2, q_4`.
    pub helpers: Vec<(String, Poly<F>)>,
}

pub fn groups() -> Vec<OmegaGroup> {
    vec![OmegaGroup::rows(4, -1), OmegaGroup::rows(8, -1), OmegaGroup::cols(4, 3, 0), OmegaGroup::cols(8, 3, 0)]
}

pub fn build_alpha_tilde<F: Field>(p: &ParamSet<F>) -> Result<ExampleMatrix<F>, SurfexError> {
    p.validate()?;
    let file = data::alpha_tilde();
    let w = file.weights.clone();
    let vals = p.as_vec();
    let (rows, cols) = (header_ints(file, "rows"), header_ints(file, "cols"));
    let entry = |i: usize, j: usize| -> Result<Option<Poly<F>>, SurfexError> {
        match file.get(&format!("a{}_{}", i + 1, j + 1)) {
            Some(t) => Ok(Some(file.instantiate(t, &vals)?)),
            None => Ok(None),
        }
    };
    let mut entries = Vec::with_capacity(rows.len());
    for i in 0..rows.len() {
        let mut row = Vec::with_capacity(cols.len());
        for j in 0..cols.len() {
            // Unlisted entries follow from the symmetry.
            let e = match entry(i, j)? {
                Some(e) => e,
                None => entry(j, i)?.ok_or_else(|| SurfexError::Data(format!("a{}_{} and its mirror are missing", i + 1, j + 1)))?,
            };
            let deg = rows[i] - cols[j];
            row.push(e.with_degree(deg, &w).map_err(|_| SurfexError::Data(format!("a{}_{} is not of degree {deg}", i + 1, j + 1)))?);
        }
        entries.push(row);
    }
    let neg = |v: &[i64]| GradedFree::new(v.iter().map(|t| -t).collect());
    let matrix = GradedMatrix::new(w, neg(&cols), neg(&rows), entries)?;
    let helpers = data::alpha_helpers()
        .entries
        .iter()
        .map(|(n, t)| Ok((n.clone(), data::alpha_helpers().instantiate(t, &vals)?)))
        .collect::<Result<_, SurfexError>>()?;
    Ok(ExampleMatrix { map: BundleMap::new(matrix, groups())?, helpers })
}

impl<F: Field> ExampleMatrix<F> {
    pub fn weights(&self) -> &Weights {
        &self.map.matrix.weights
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<F> {
        &self.map.matrix.entries[i][j]
    }

    pub fn helper(&self, name: &str) -> Option<&Poly<F>> {
        self.helpers.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// The matrix with `x_0^deg` added to entry `(i, j)` only.
    pub fn perturbed(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        let e = &mut out.map.matrix.entries[i][j];
        let d = e.degree().unwrap_or(0).max(0);
        let mut m = Monomial::one(4);
        m.0[0] = d as u32;
        *e = e.try_add(&Poly::monomial(m, F::one(), d)).expect("same degree");
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaBlockReport {
    pub holds: bool,
    /// `B_12 = Σ_v λ_v C_v`, when such a decomposition exists.
    pub lambda: Option<[String; 4]>,
    pub diagonal_blocks_zero: bool,
    pub transposed: bool,
}

fn perm_sign(p: [usize; 4]) -> i64 {
    let mut s = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// `C_v[k][l] = sgn(k,v,l,m)·x_m` for `{k,v,l,m} = {0,1,2,3}`, zero otherwise:
/// the contraction with `x_v` between the two Ω-groups.
pub fn contraction<F: Field>(w: &Weights, v: usize) -> Vec<Vec<Poly<F>>> {
    (0..4)
        .map(|k| {
            (0..4)
                .map(|l| {
                    if k == l || k == v || l == v {
                        return Poly::zero(4);
                    }
                    let m = 6 - k - l - v;
                    Poly::var(w, m).scale(&F::from_i64(perm_sign([k, v, l, m])))
                })
                .collect()
        })
        .collect()
}

/// Coefficients `λ` with `b = Σ_v λ_v C_v`, or `None`.
fn decompose<F: Field>(w: &Weights, b: &[Vec<Poly<F>>]) -> Option<[F; 4]> {
    let mut lambda: [F; 4] = std::array::from_fn(|_| F::zero());
    for v in 0..4 {
        if w.get(v) != 1 {
            continue;
        }
        let (k, l) = match v {
            0 => (1, 2),
            _ => (0, if v == 2 { 1 } else { 2 }),
        };
        let m = 6 - k - l - v;
        let c = b[k][l].coefficient(&Monomial::var(4, m));
        lambda[v] = c * F::from_i64(perm_sign([k, v, l, m]));
    }
    let mut rebuilt = vec![vec![Poly::zero(4); 4]; 4];
    for (v, lv) in lambda.iter().enumerate() {
        if lv.is_zero() {
            continue;
        }
        let cv = contraction::<F>(w, v);
        for k in 0..4 {
            for l in 0..4 {
                rebuilt[k][l] = (&rebuilt[k][l]).try_add(&cv[k][l].scale(lv)).ok()?;
            }
        }
    }
    (0..4).all(|k| (0..4).all(|l| strip(&rebuilt[k][l]) == strip(&b[k][l]))).then_some(lambda)
}

fn strip<F: Field>(p: &Poly<F>) -> Vec<(Monomial, F)> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn block<F: Field>(m: &GradedMatrix<F>, r0: usize, c0: usize) -> Vec<Vec<Poly<F>>> {
    (0..4).map(|i| (0..4).map(|j| m.entries[r0 + i][c0 + j].clone()).collect()).collect()
}

/// The block between the two Ω-groups: the diagonal 4×4 blocks vanish, the
/// off-diagonal ones are mutually transposed and equal `λ·C_1` with `λ ≠ 0`.
pub fn omega_block_check<F: Field>(m: &ExampleMatrix<F>) -> OmegaBlockReport {
    let mat = &m.map.matrix;
    let w = m.weights();
    let (b11, b12, b21, b22) = (block(mat, 4, 4), block(mat, 4, 8), block(mat, 8, 4), block(mat, 8, 8));
    let zero = |b: &Vec<Vec<Poly<F>>>| b.iter().flatten().all(Poly::is_zero);
    let diagonal_blocks_zero = zero(&b11) && zero(&b22);
    let transposed = (0..4).all(|k| (0..4).all(|l| strip(&b21[k][l]) == strip(&b12[l][k])));
    let lambda = decompose(w, &b12);
    let pattern = lambda.as_ref().is_some_and(|l| !l[1].is_zero() && l.iter().enumerate().all(|(v, x)| v == 1 || x.is_zero()));
    OmegaBlockReport {
        holds: diagonal_blocks_zero && transposed && pattern,
        lambda: lambda.map(|l| l.map(|x| x.to_string())),
        diagonal_blocks_zero,
        transposed,
    }
}

/// A random symmetric map of line bundles with rows `O(t_i)` and columns
/// `O(s − t_j)`: entry `(i, j)` is a random form of degree `t_i + t_j − s`.
pub fn random_symmetric<F: Field, R: rand::Rng + ?Sized>(w: &Weights, twists: &[i64], s: i64, rng: &mut R) -> GradedMatrix<F> {
    let n = twists.len();
    let mut entries = vec![vec![Poly::zero(w.len()); n]; n];
    for i in 0..n {
        for j in i..n {
            let d = twists[i] + twists[j] - s;
            let terms: Vec<(Monomial, F)> = ring::monomials_of_degree(w, d).into_iter().map(|m| (m, F::random(rng))).collect();
            let p = Poly::from_terms(w.len(), terms, Some(d), w).expect("degree d monomials");
            entries[i][j] = p.clone();
            entries[j][i] = p;
        }
    }
    let target = GradedFree::new(twists.iter().map(|t| -t).collect());
    let source = GradedFree::new(twists.iter().map(|t| t - s).collect());
    GradedMatrix::new(w.clone(), source, target, entries).expect("degrees follow the twists")
}
